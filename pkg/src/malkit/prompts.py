"""Prompt construction for the three evaluation tasks.

CRA asks the model to solve a problem correctly. MRA shows a student's wrong
answer to a source problem (optionally with the worked steps) and asks what
the same student would answer on a target problem; the graded target is the
malrule answer. FMRA states the misconception outright and asks the model to
apply it. All prompts are exactly one system plus one user message.
"""

from __future__ import annotations

import hashlib
import json

from .answers import render, to_json
from .errors import ConditionMismatch
from .generation import ProblemInstance
from .registry import CATEGORY_TO_NCTM
from .sampling import ANSWER_ONLY, WITH_STEPS, EvalPair

TASK_CRA = "cra"
TASK_MRA = "mra"
TASK_FMRA = "fmra"
TASKS = (TASK_CRA, TASK_MRA, TASK_FMRA)

CRA_SYSTEM = (
    "You are a careful math tutor. Solve the problem step by step, then give "
    "the final result on its own last line in the form: Answer: <answer>"
)

MRA_SYSTEM = (
    "You are an expert in identifying and understanding student mathematical "
    "misconceptions. Given an example of a student's incorrect answer, identify "
    "the systematic error and apply it to predict answers for new problems."
)

MRA_USER_ANSWER_ONLY = (
    "A student solved this problem incorrectly:\n"
    "\n"
    "Problem: {source}\n"
    "\n"
    "Student's Answer: {answer}\n"
    "\n"
    "Now predict what this same student would answer for:\n"
    "\n"
    "{target}"
)

MRA_USER_WITH_STEPS = (
    "A student solved this problem incorrectly:\n"
    "\n"
    "Problem: {source}\n"
    "\n"
    "Student's Answer: {answer}\n"
    "\n"
    "Student's Work:\n"
    "{steps}\n"
    "\n"
    "Now predict what this same student would answer for:\n"
    "\n"
    "{target}"
)

FMRA_SYSTEM = (
    "You are simulating a student who has a specific mathematical "
    "misconception. Apply the described misconception consistently to solve "
    "the problem."
)

FMRA_USER = (
    "A student has the following misconception:\n"
    "\n"
    "{description}\n"
    "\n"
    "Apply this misconception to solve:\n"
    "\n"
    "{problem}"
)


def render_steps(step_texts):
    return "\n".join(f"Step {k}: {text}" for k, text in enumerate(step_texts, start=1))


def _nctm_category(malrule):
    return CATEGORY_TO_NCTM[malrule.split("/", 1)[0]]


class PromptSpec:
    __slots__ = ("task", "messages", "expected", "meta")

    def __init__(self, task, messages, expected, meta):
        if task not in TASKS:
            raise ValueError(f"unknown task {task!r}")
        roles = [m["role"] for m in messages]
        if roles != ["system", "user"]:
            raise ValueError("a prompt is exactly one system message and one user message")
        self.task = task
        self.messages = [{"role": m["role"], "text": m["text"]} for m in messages]
        self.expected = expected
        self.meta = dict(meta)

    @property
    def prompt_id(self):
        payload = json.dumps(
            {
                "task": self.task,
                "messages": self.messages,
                "expected": to_json(self.expected),
                "meta": self.meta,
            },
            ensure_ascii=False,
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]

    def to_record(self):
        return {
            "prompt_id": self.prompt_id,
            "task": self.task,
            "messages": self.messages,
            "expected": to_json(self.expected),
            "meta": self.meta,
        }


def build_prompt(task, payload, registry=None):
    """One PromptSpec for one instance (cra, fmra) or one expanded pair (mra)."""
    if task == TASK_CRA:
        if not isinstance(payload, ProblemInstance):
            raise ConditionMismatch("cra takes a problem instance")
        return PromptSpec(
            task,
            [
                {"role": "system", "text": CRA_SYSTEM},
                {"role": "user", "text": payload.statement},
            ],
            payload.correct_answer,
            {
                "malrule": payload.malrule,
                "nctm_category": _nctm_category(payload.malrule),
                "template": payload.template,
                "instance_id": payload.instance_id,
                "grade_band": payload.grade_band,
            },
        )

    if task == TASK_MRA:
        if not isinstance(payload, EvalPair):
            raise ConditionMismatch("mra takes an evaluation pair")
        if payload.prompt_condition is None:
            raise ConditionMismatch("mra needs a pair expanded to a prompt condition")
        fields = {
            "source": payload.source.statement,
            "answer": render(payload.source.malrule_answer),
            "target": payload.target.statement,
        }
        if payload.prompt_condition == WITH_STEPS:
            fields["steps"] = render_steps(payload.source.buggy.step_texts())
            user = MRA_USER_WITH_STEPS.format(**fields)
        else:
            user = MRA_USER_ANSWER_ONLY.format(**fields)
        return PromptSpec(
            task,
            [
                {"role": "system", "text": MRA_SYSTEM},
                {"role": "user", "text": user},
            ],
            payload.target.malrule_answer,
            {
                "malrule": payload.malrule,
                "nctm_category": _nctm_category(payload.malrule),
                "source_template": payload.source.template,
                "target_template": payload.target.template,
                "template_condition": payload.template_condition,
                "prompt_condition": payload.prompt_condition,
                "pair_id": payload.pair_id,
                "source_instance_id": payload.source.instance_id,
                "target_instance_id": payload.target.instance_id,
                "grade_band": payload.source.grade_band,
            },
        )

    if task == TASK_FMRA:
        if not isinstance(payload, ProblemInstance):
            raise ConditionMismatch("fmra takes a problem instance")
        if registry is None:
            raise ConditionMismatch("fmra needs the registry for the misconception text")
        user = FMRA_USER.format(
            description=registry.fmra_description(payload.malrule),
            problem=payload.statement,
        )
        return PromptSpec(
            task,
            [
                {"role": "system", "text": FMRA_SYSTEM},
                {"role": "user", "text": user},
            ],
            payload.malrule_answer,
            {
                "malrule": payload.malrule,
                "nctm_category": _nctm_category(payload.malrule),
                "template": payload.template,
                "instance_id": payload.instance_id,
                "grade_band": payload.grade_band,
            },
        )

    raise ConditionMismatch(f"unknown task {task!r}")


def build_prompts(registry, dataset, expanded_pairs, tasks=TASKS, steps="both"):
    """All prompts for a benchmark build, in task order cra, mra, fmra.

    steps filters MRA rows: "on" keeps with_steps, "off" keeps answer_only,
    "both" keeps everything. CRA and FMRA take one prompt per instance.
    """
    if steps not in ("on", "off", "both"):
        raise ValueError(f"steps must be on, off, or both, not {steps!r}")
    wanted = {ANSWER_ONLY, WITH_STEPS} if steps == "both" else (
        {WITH_STEPS} if steps == "on" else {ANSWER_ONLY}
    )
    for task in tasks:
        if task not in TASKS:
            raise ValueError(f"unknown task {task!r}")
    prompts = []
    if TASK_CRA in tasks:
        prompts.extend(build_prompt(TASK_CRA, inst) for inst in dataset.instances)
    if TASK_MRA in tasks:
        prompts.extend(
            build_prompt(TASK_MRA, pair)
            for pair in expanded_pairs
            if pair.prompt_condition in wanted
        )
    if TASK_FMRA in tasks:
        prompts.extend(build_prompt(TASK_FMRA, inst, registry) for inst in dataset.instances)
    return prompts
