"""Exterior/Clifford calculus on Riemannian and Riemann-Cartan structures.

Thin wrapper around the compiled core.  Expressions cross the boundary as
text in the engine grammar (docs/expression-grammar.md); reports come back
as plain dictionaries.
"""

import json as _json

from _geocalc import (  # noqa: F401
    Connection,
    ConnectionError,
    EvalError,
    ExprParseError,
    Geometry,
    GeometryError,
    SpecFileError,
    builtin_names,
    diff,
    eval_expr,
    from_coefficients,
    from_contorsion,
    levi_civita,
    num_equal,
    run_builtin_json,
    run_spec_file_json,
)

__version__ = "1.0.0"


def run_builtin(name):
    """Run a builtin scenario; returns the report as a dict (with a
    "passed" key added)."""
    text, passed = run_builtin_json(name)
    report = _json.loads(text)
    report["passed"] = passed
    return report


def run_spec_file(path):
    """Validate and run a manifold spec file; returns the report dict."""
    text, passed = run_spec_file_json(str(path))
    report = _json.loads(text)
    report["passed"] = passed
    return report


def check(report, name):
    """Look up a check record by name in a report dict."""
    for entry in report["checks"]:
        if entry["name"] == name:
            return entry
    return None
