"""Birkhoff-James orthogonality, numerical ranges, and spear-vector toolkit.

The heavy lifting happens in the C++ extension; this package re-exports it and
adds a couple of conveniences for JSON problem files.
"""

import json as _json

try:  # installed wheel layout
    from . import _banach_ortho as _core
except ImportError:  # development layout: extension on sys.path
    import _banach_ortho as _core

__version__ = _core.__version__

Space = _core.Space
DomainError = _core.DomainError
CapabilityError = _core.CapabilityError
DiagnosticError = _core.DiagnosticError

bj_orthogonal = _core.bj_orthogonal
james_witness = _core.james_witness
best_approximation = _core.best_approximation
numerical_radius = _core.numerical_radius
range_scan_polygon = _core.range_scan_polygon
blaschke_eval = _core.blaschke_eval
operator_norm_json = _core.operator_norm_json
v_radius_json = _core.v_radius_json
known_kinds = _core.known_kinds


def run_problem(problem):
    """Run a problem file given as a dict or JSON string; returns a dict."""
    text = problem if isinstance(problem, str) else _json.dumps(problem)
    return _json.loads(_core.run_problem(text))


def run_suite(name, seed):
    """Run a named property suite; returns the summary report as a dict."""
    return _json.loads(_core.run_suite(name, int(seed)))
