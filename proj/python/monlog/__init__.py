"""Monadic logic programs under completion semantics.

Thin wrapper over the _monlog extension: every operation takes source text
(programs, queries, formulas, language directives, model files) and returns
plain python values decoded from the extension's JSON documents.
"""

import json as _json

try:
    from monlog import _monlog as _impl
except ImportError:  # in-tree runs put the extension on sys.path directly
    import _monlog as _impl

Bounds = _impl.Bounds

__all__ = [
    "Bounds",
    "complete",
    "simplify",
    "emit_sns",
    "check_domain",
    "evaluate",
    "solve",
    "entail",
]


def complete(program, language=None, cet_depth=None):
    """Predicate completion of a program.

    Returns a dict with the language, the shared head variable, one
    definition per predicate, and (when cet_depth is given) the freeness
    axioms for function words up to that length.
    """
    depth = -1 if cet_depth is None else int(cet_depth)
    return _json.loads(_impl.complete_doc(program, language or "", depth))


def simplify(formula, language):
    """The flattened, normalized form of a formula, as formula text."""
    return _json.loads(_impl.simplify_doc(formula, language))["formula"]


def emit_sns(formula, language):
    """The successor-logic sentence for a closed formula, as an S-expression."""
    return _json.loads(_impl.emit_sns_doc(formula, language))["sentence"]


def check_domain(model):
    """Whether a model file's embedded domain satisfies the domain condition."""
    return _json.loads(_impl.check_domain_doc(model))["domain_holds"]


def evaluate(model, formula):
    """Truth of a closed formula in the structure presented by a model file."""
    return _json.loads(_impl.eval_doc(model, formula))["value"]


def solve(formula, language, bounds=None):
    """Bounded model search for a closed formula.

    Returns the verdict document: verdict ('sat' or
    'no_model_within_bounds'), candidate count, optional witness model, and
    the bounds used.
    """
    return _json.loads(_impl.solve_doc(formula, language, bounds or Bounds()))


def entail(program, query, language=None, bounds=None):
    """Countermodel search for a query and for its negation.

    Returns a dict with the query and one verdict document per direction
    (against_query, against_negation).
    """
    return _json.loads(
        _impl.entail_doc(program, query, language or "", bounds or Bounds())
    )
