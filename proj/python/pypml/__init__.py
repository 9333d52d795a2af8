"""Python bindings for the pml core.

Formulas are passed as strings in the usual concrete syntax (``X_m -> Y_c``).
Structured results come back as plain dicts and lists.
"""

import json

from . import _core
from ._core import JsonError, PmlError

__all__ = [
    "PmlError",
    "JsonError",
    "parse",
    "decide",
    "eval_model",
    "minimal_labels",
    "good_derivation",
    "translate",
    "check_nd",
    "cutfree_search",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def parse(text):
    return json.loads(_core.parse(text))


def decide(goal, hyps=(), ruleset="pml", max_model_size=5, engine="both"):
    """Returns {"verdict": "Derivable" | "NotDerivable" | "Unknown", ...}.

    A NotDerivable verdict carries the countermodel and the failing world.
    """
    return json.loads(_core.decide(goal, list(hyps), ruleset, max_model_size, engine))


def eval_model(model, formula, world=""):
    """Maps each world (or just `world`) to whether it forces `formula`."""
    return json.loads(_core.eval_model(_dump(model), formula, world))


def minimal_labels(formula):
    return json.loads(_core.minimal_labels(formula))


def good_derivation(formula, depth=14):
    return json.loads(_core.good_derivation(formula, depth))


def translate(formula, mode):
    return _core.translate(formula, mode)


def check_nd(derivation, ruleset="pml"):
    return json.loads(_core.check_nd(_dump(derivation), ruleset))


def cutfree_search(focus, left=(), right=()):
    return json.loads(_core.cutfree_search(focus, list(left), list(right)))
