"""Step-by-step solution traces.

A Trace's answer is always canonical and the final step carries that answer
as its value, so rendered work and graded answer cannot drift apart.
"""

from __future__ import annotations

from .answers import canonicalize, render


class Step:
    __slots__ = ("text", "value")

    def __init__(self, text, value=None):
        if not isinstance(text, str) or not text.strip():
            raise ValueError("step text must be a non-empty string")
        self.text = text
        self.value = value

    def __repr__(self):
        return f"Step({self.text!r})"


class Trace:
    __slots__ = ("steps", "answer")

    def __init__(self, steps, answer):
        steps = tuple(steps)
        if not steps:
            raise ValueError("a trace needs at least one step")
        answer = canonicalize(answer)
        last = steps[-1]
        if last.value is None:
            steps = steps[:-1] + (Step(last.text, answer),)
        elif render(canonicalize(last.value)) != render(answer):
            raise ValueError(
                f"final step value {render(canonicalize(last.value))!r} "
                f"does not equal the trace answer {render(answer)!r}"
            )
        self.steps = steps
        self.answer = answer

    def step_texts(self):
        return [s.text for s in self.steps]

    def __repr__(self):
        return f"Trace({len(self.steps)} steps, answer={render(self.answer)!r})"
