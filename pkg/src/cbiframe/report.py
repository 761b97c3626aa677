"""Task execution and deterministic report assembly.

Every task gets its own probe stream ``default_rng([seed, task_index])`` so
reordering or removing one task never shifts another task's probes.  Reports
are serialized with sorted keys and shortest round-trip float formatting,
which makes repeated runs byte-identical.  Wall times are recorded only when
asked for since they would break that property.
"""

from __future__ import annotations

import hashlib
import json
import time
from numbers import Number

import numpy as np

from . import __version__
from . import module as mod
from .biframe import (
    adjoint_identity_check,
    canonical_duals,
    characterization_check,
    dual_check,
    frame_operator,
    integral_action,
    transform_theorem_check,
    verify_biframe,
)
from .cstar import DEFAULT_TOL
from .errors import BiframeError
from .module import ModuleVector
from .multipliers import (
    lower_bound_criterion,
    multiplier,
    multiplier_adjoint_check,
    multiplier_dual,
    multiplier_norm_check,
    perturbation_criterion,
    two_sided_criterion,
)
from .scenario import Scenario, encode_complex
from .tensor import (
    tensor_biframe_check,
    tensor_bounds_lemma_check,
    tensor_invertibility_check,
    tensor_multiplier_factorization_check,
    tensor_operator_factorization_check,
)

REPORT_SCHEMA = 1

DEFAULT_TASK_TOL = {
    "verify_biframe": DEFAULT_TOL,
    "adjoint_check": 1e-10,
    "characterization_check": DEFAULT_TOL,
    "transform_check": 1e-8,
    "dual_check": 1e-10,
    "multiplier": 1e-12,
    "multiplier_adjoint": 1e-10,
    "multiplier_criteria": 1e-8,
    "multiplier_dual": 1e-9,
    "tensor_check": DEFAULT_TOL,
    "tensor_factorization": 1e-9,
    "tensor_invertibility": DEFAULT_TOL,
    "tensor_multiplier": 1e-9,
}
CONJUGATION_TOL = 1e-9
RECONSTRUCTION_PROBES = 100


def plain(obj):
    """Convert numpy scalars, arrays and tuples into JSON-ready values.

    Non-finite floats become the strings ``"inf"``, ``"-inf"`` and ``"nan"``.
    """
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": plain(float(obj.real)), "im": plain(float(obj.imag))}
    if isinstance(obj, Number):
        x = float(obj)
        if np.isfinite(x):
            return x
        return "nan" if np.isnan(x) else ("inf" if x > 0 else "-inf")
    return obj


def operator_payload(T):
    return {"rank": T.rank, "blocks": list(T.descriptor.block_sizes), "reps": [encode_complex(r) for r in T.reps]}


def _reconstruction(Xd, Y, space, rng, probes):
    worst = 0.0
    for _ in range(probes):
        f = ModuleVector.random(Y.descriptor, Y.rank, rng)
        worst = max(worst, (f - integral_action(Xd, Y, space, f)).norm())
    return worst


# ------------------------------------------------------------------ tasks


def _verify_biframe(sc, t, tol, rng):
    X, Y = sc.map(t["X"]), sc.map(t["Y"])
    r = verify_biframe(X, Y, sc.map_space(t["X"]), tol=tol, probes=t.get("probes", 100), rng=rng)
    return r.is_biframe, r.to_dict(), [r.diagnostic] if r.diagnostic else []


def _adjoint_check(sc, t, tol, rng):
    res = adjoint_identity_check(sc.map(t["X"]), sc.map(t["Y"]), sc.map_space(t["X"]))
    return res <= tol, {"residual": res, "tol": tol}, []


def _characterization_check(sc, t, tol, rng):
    X, Y, space = sc.map(t["X"]), sc.map(t["Y"]), sc.map_space(t["X"])
    A = float(t["A"])
    result = characterization_check(X, Y, space, A, tol)
    lower = mod.self_adjoint_bounds(frame_operator(X, Y, space), tol)[0]
    spectral = lower >= A - tol
    agree = result == spectral
    notes = [] if agree else ["order check and spectral lower bound disagree"]
    return agree, {"A": A, "result": result, "spectral_lower": lower, "agrees_with_spectral": agree}, notes


def _transform_check(sc, t, tol, rng):
    r = transform_theorem_check(sc.operator(t["operator"]), sc.map(t["X"]), sc.map(t["Y"]), sc.map_space(t["X"]), tol=tol, rng=rng)
    ok = r.holds and r.conjugation_residual <= CONJUGATION_TOL
    notes = [] if ok else ["transform brackets, verdicts or the conjugation identity failed"]
    return ok, r.to_dict(), notes


def _dual_check(sc, t, tol, rng):
    X, Y, space = sc.map(t["X"]), sc.map(t["Y"]), sc.map_space(t["X"])
    if t.get("canonical", True):
        Xd, Yd = canonical_duals(X, Y, space)
        left, right = dual_check(Xd, Y, space), dual_check(X, Yd, space)
        recon = _reconstruction(Xd, Y, space, rng, t.get("probes", RECONSTRUCTION_PROBES))
        pay = {"canonical": True, "residual_left": left, "residual_right": right, "reconstruction": recon, "tol": tol}
        return max(left, right, recon) <= tol, pay, []
    res = dual_check(sc.map(t["dual"]), Y, space)
    return res <= tol, {"canonical": False, "residual": res, "tol": tol}, []


def _multiplier(sc, t, tol, rng):
    m, X, Y, space = sc.symbol(t["symbol"]), sc.map(t["X"]), sc.map(t["Y"]), sc.map_space(t["X"])
    r = multiplier_norm_check(m, X, Y, space, tol=tol)
    pay = r.to_dict()
    pay["operator"] = operator_payload(multiplier(m, X, Y, space))
    pay["sup_grid"] = m.sup_grid
    return r.holds, pay, [] if r.holds else ["norm bound violated"]


def _multiplier_adjoint(sc, t, tol, rng):
    res = multiplier_adjoint_check(sc.symbol(t["symbol"]), sc.map(t["X"]), sc.map(t["Y"]), sc.map_space(t["X"]))
    return res <= tol, {"residual": res, "tol": tol}, []


def _multiplier_criteria(sc, t, tol, rng):
    m, X, Y, space = sc.symbol(t["symbol"]), sc.map(t["X"]), sc.map(t["Y"]), sc.map_space(t["X"])
    probes = t.get("probes", 500)
    lo = lower_bound_criterion(m, X, Y, space, tol=tol)
    pert = perturbation_criterion(m, X, Y, space, alpha=t.get("alpha"), beta=t.get("beta", 0.0), tol=tol, probes=probes, rng=rng)
    two = two_sided_criterion(m, X, Y, space, tol=tol, probes=probes, rng=rng)
    notes = []
    ok = True
    for name, flag in (
        ("lower bound criterion", lo.holds),
        ("perturbation criterion", pert.holds),
        ("two-sided criterion (X, X) bound", two.x_holds),
        ("two-sided criterion claimed (Y, Y) bound", two.claimed_y_holds),
        ("two-sided criterion certified (Y, Y) bound", two.certified_y_holds),
    ):
        if flag is False:
            ok = False
            notes.append(f"{name} violated")
    return ok, {"lower_bound": lo.to_dict(), "perturbation": pert.to_dict(), "two_sided": two.to_dict()}, notes


def _multiplier_dual(sc, t, tol, rng):
    m, X, Y, space = sc.symbol(t["symbol"]), sc.map(t["X"]), sc.map(t["Y"]), sc.map_space(t["X"])
    res = dual_check(multiplier_dual(m, X, Y, space), Y, space)
    return res <= tol, {"residual": res, "tol": tol}, []


def _tensor_args(sc, t):
    return (
        sc.map(t["X1"]), sc.map(t["Y1"]), sc.map_space(t["X1"]),
        sc.map(t["X2"]), sc.map(t["Y2"]), sc.map_space(t["X2"]),
    )


def _tensor_check(sc, t, tol, rng):
    r = tensor_biframe_check(*_tensor_args(sc, t), tol=tol, rng=rng)
    notes = []
    if not r.equivalence_holds:
        notes.append("tensor verdict differs from the conjunction of factor verdicts")
    if r.bounds_hold is False:
        notes.append("tensor bounds fall outside the factor bound products")
    return r.holds, r.to_dict(), notes


def _tensor_factorization(sc, t, tol, rng):
    args = _tensor_args(sc, t)
    res = tensor_operator_factorization_check(*args)
    pay = {"residual": res, "tol": tol}
    notes = []
    try:
        pay["bounds_lemma"] = tensor_bounds_lemma_check(*args)
    except BiframeError as exc:
        pay["bounds_lemma"] = None
        notes.append(f"bounds lemma not checked: {exc}")
    ok = res <= tol and pay["bounds_lemma"] is not False
    return ok, pay, notes


def _tensor_invertibility(sc, t, tol, rng):
    r = tensor_invertibility_check(sc.operator(t["T1"]), sc.operator(t["T2"]), *_tensor_args(sc, t), tol=tol, rng=rng)
    return r.holds, r.to_dict(), [] if r.holds else ["invertibility characterizations disagree"]


def _tensor_multiplier(sc, t, tol, rng):
    res = tensor_multiplier_factorization_check(sc.symbol(t["symbol1"]), sc.symbol(t["symbol2"]), *_tensor_args(sc, t))
    return res <= tol, {"residual": res, "tol": tol}, []


RUNNERS = {
    "verify_biframe": _verify_biframe,
    "adjoint_check": _adjoint_check,
    "characterization_check": _characterization_check,
    "transform_check": _transform_check,
    "dual_check": _dual_check,
    "multiplier": _multiplier,
    "multiplier_adjoint": _multiplier_adjoint,
    "multiplier_criteria": _multiplier_criteria,
    "multiplier_dual": _multiplier_dual,
    "tensor_check": _tensor_check,
    "tensor_factorization": _tensor_factorization,
    "tensor_invertibility": _tensor_invertibility,
    "tensor_multiplier": _tensor_multiplier,
}


def _quadrature(sc, t):
    if "X1" in t:
        return [sc.map_space(t["X1"]).describe(), sc.map_space(t["X2"]).describe()]
    return sc.map_space(t["X"]).describe()


def run_scenario(doc, raw=b"", seed=None, tol=None, quad=None, timing=False):
    """Execute every task of a scenario document and return the report dict.

    Parameters
    ----------
    doc : dict
        Parsed scenario.
    raw : bytes
        Original file contents, hashed into the report.
    seed : int, optional
        Overrides the scenario seed.
    tol : float, optional
        Overrides every task tolerance.
    quad : (int, int), optional
        ``(order, subdivisions)`` for every space.
    timing : bool
        Record wall times (reports are then no longer reproducible byte for byte).

    Raises
    ------
    ScenarioError
        If the document does not validate.
    """
    sc = Scenario(doc, quad=quad)
    seed = sc.seed if seed is None else int(seed)
    tasks = []
    for index, t in enumerate(sc.tasks):
        name = t["task"]
        task_tol = tol if tol is not None else t.get("tol", DEFAULT_TASK_TOL[name])
        rng = np.random.default_rng([seed, index])
        entry = {"index": index, "task": name, "label": t.get("label", ""), "tol": task_tol}
        start = time.perf_counter()
        try:
            ok, payload, notes = RUNNERS[name](sc, t, task_tol, rng)
            entry["verdict"] = "pass" if ok else "fail"
            entry["payload"] = payload
            entry["diagnostics"] = notes
        except (BiframeError, ValueError, np.linalg.LinAlgError) as exc:
            entry["verdict"] = "fail"
            entry["payload"] = {}
            entry["diagnostics"] = [f"{type(exc).__name__}: {exc}"]
        entry["quadrature"] = _quadrature(sc, t)
        if timing:
            entry["wall_time"] = time.perf_counter() - start
        tasks.append(entry)
    passed = sum(e["verdict"] == "pass" for e in tasks)
    return plain(
        {
            "report_schema": REPORT_SCHEMA,
            "toolkit": {"name": "cbiframe", "version": __version__},
            "scenario_sha256": hashlib.sha256(raw).hexdigest(),
            "seed": seed,
            "options": {"tol": tol, "quad": None if quad is None else f"{quad[0]}x{quad[1]}"},
            "tasks": tasks,
            "summary": {"tasks": len(tasks), "passed": passed, "failed": len(tasks) - passed,
                        "verdict": "pass" if passed == len(tasks) else "fail"},
        }
    )


def dumps(report):
    """Canonical serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"
