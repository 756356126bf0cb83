"""Answer extraction from model responses, and per-response grading.

extract_answer never raises: it walks a priority chain (boxed expression,
final Answer/Expected line, last bold span, last parseable value in the final
paragraph) and returns a cleaned answer string or None. Grading parses the
extracted string under the answer grammar and matches it against the
prompt's expected value.
"""

from __future__ import annotations

import re

from .answers import from_json
from .errors import MalkitError, ParseError
from .matching import DEFAULT_POLICY, answers_match
from .parsing import parse_answer
from .prompts import PromptSpec

_FRAC_TEX = re.compile(r"\\[dt]?frac\s*\{([^{}]*)\}\s*\{([^{}]*)\}")
_SQRT_TEX = re.compile(r"\\sqrt\s*\{([^{}]*)\}")
_WRAP_TEX = re.compile(r"\\(?:text|mathrm|operatorname|mathbf)\s*\{([^{}]*)\}")
_EXP_BRACES = re.compile(r"\^\s*\{([^{}]*)\}")
_SPACING_TEX = re.compile(r"\\[,;!]|\\quad|\\qquad|\\left|\\right")
_ANSWER_LINE = re.compile(
    r"^[\s>#*-]*\**\s*(?:final\s+)?(?:answer|expected)\b\s*\**\s*[:=]\s*(.+)$",
    re.IGNORECASE,
)
_BOLD = re.compile(r"\*\*([^*\n]+)\*\*")
_CANDIDATE = re.compile(
    r"[-+]?\d[\d,]*(?:\.\d+)?\s*[x×*]\s*10\s*\^\s*\(?[-+]?\d+\)?"
    r"|[-+]?\d+[ ]+\d+\s*/\s*\d+"
    r"|[-+]?\d[\d,]*(?:\.\d+)?\s*/\s*\d[\d,]*(?:\.\d+)?"
    r"|[-+]?\d[\d,]*(?:\.\d+)?"
    r"|sqrt\(\s*[-+]?\d+\s*\)"
)


def _strip_math_delims(s):
    s = s.strip()
    for left, right in (("$$", "$$"), ("\\(", "\\)"), ("\\[", "\\]"), ("$", "$")):
        if s.startswith(left) and s.endswith(right) and len(s) > len(left) + len(right) - 1:
            return s[len(left) : len(s) - len(right)].strip()
    return s


def _detex(s):
    """Rewrite the common LaTeX answer forms into the ASCII grammar."""
    s = _strip_math_delims(s)
    for _ in range(3):  # tolerate shallow nesting such as \frac{\sqrt{2}}{3}
        replaced = _SQRT_TEX.sub(r"sqrt(\1)", s)
        replaced = _FRAC_TEX.sub(r"(\1)/(\2)", replaced)
        replaced = _WRAP_TEX.sub(r" \1", replaced)
        if replaced == s:
            break
        s = replaced
    s = _EXP_BRACES.sub(r"^(\1)", s)
    s = s.replace("\\times", " x ").replace("\\cdot", "*")
    s = _SPACING_TEX.sub(" ", s)
    s = s.replace("{", "").replace("}", "")
    return s


def _clean(s):
    s = _detex(s)
    # An echoed equation ends in the value: keep the right-hand side.
    if "=" in s:
        tail = s.rsplit("=", 1)[1].strip()
        s = tail if tail else s.rstrip("= \t")
    s = s.strip().strip("*_`").strip()
    s = s.rstrip(".,;:!").strip()
    s = " ".join(s.split())
    return s


def _last_boxed(text):
    marker = "\\boxed{"
    start = text.rfind(marker)
    while start != -1:
        i = start + len(marker)
        depth = 1
        for j in range(i, len(text)):
            ch = text[j]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    return text[i:j]
        start = text.rfind(marker, 0, start)
    return None


def _last_answer_line(text):
    for line in reversed(text.splitlines()):
        m = _ANSWER_LINE.match(line)
        if m:
            return m.group(1)
    return None


def _last_bold(text):
    spans = _BOLD.findall(text)
    for span in reversed(spans):
        if span.strip():
            return span
    return None


def _last_value_in_final_paragraph(text):
    paragraphs = [p for p in re.split(r"\n\s*\n", text) if p.strip()]
    if not paragraphs:
        return None
    for m in reversed(list(_CANDIDATE.finditer(paragraphs[-1]))):
        cleaned = _clean(m.group(0))
        if not cleaned:
            continue
        try:
            parse_answer(cleaned)
        except MalkitError:
            continue
        return cleaned
    return None


def extract_answer(text):
    """Best-effort final answer from a free-form response; None when nothing surfaces."""
    if not isinstance(text, str) or not text.strip():
        return None
    for finder in (_last_boxed, _last_answer_line, _last_bold):
        found = finder(text)
        if found is None:
            continue
        cleaned = _clean(found)
        if cleaned:
            return cleaned
    return _last_value_in_final_paragraph(text)


class EvalRecord:
    """One graded response."""

    __slots__ = (
        "prompt_id",
        "task",
        "conditions",
        "model",
        "raw_response",
        "extracted",
        "matched",
        "unparseable",
        "latency_ms",
        "meta",
    )

    def __init__(self, **kw):
        for field in self.__slots__:
            setattr(self, field, kw[field])

    def to_record(self):
        return {field: getattr(self, field) for field in self.__slots__}

    @classmethod
    def from_record(cls, record):
        return cls(**{field: record[field] for field in cls.__slots__})


def grade(prompt, response_text, model, latency_ms=None, policy=DEFAULT_POLICY):
    """Grade one raw response against the prompt's expected answer."""
    record = prompt.to_record() if isinstance(prompt, PromptSpec) else dict(prompt)
    expected = from_json(record["expected"])
    meta = dict(record.get("meta", {}))
    extracted = extract_answer(response_text)
    matched = False
    unparseable = True
    if extracted is not None:
        try:
            parsed = parse_answer(extracted)
        except ParseError:
            parsed = None
        if parsed is not None:
            unparseable = False
            matched = answers_match(parsed, expected, policy)
    return EvalRecord(
        prompt_id=record["prompt_id"],
        task=record["task"],
        conditions={
            "template_condition": meta.get("template_condition"),
            "prompt_condition": meta.get("prompt_condition"),
        },
        model=model,
        raw_response=response_text,
        extracted=extracted,
        matched=matched,
        unparseable=unparseable,
        latency_ms=latency_ms,
        meta=meta,
    )
