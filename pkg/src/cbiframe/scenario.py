"""JSON scenario files: schema, structural validation and object construction.

A scenario is a self-contained JSON object::

    {
      "version": 1,
      "seed": 0,
      "algebras":  {"A": {"blocks": [1, 1]}},
      "spaces":    {"I": {"panels": [[0, 1]], "order": 8, "subdivisions": 4}},
      "maps":      {"X": {"kind": "polynomial", "algebra": "A", "space": "I",
                          "rank": 1, "entries": [...]}},
      "operators": {...},
      "symbols":   {...},
      "tasks":     [{"task": "verify_biframe", "X": "X", "Y": "Y"}]
    }

Complex arrays are nested lists of real numbers, or objects
``{"re": nested, "im": nested}`` of equal shape.  Array layouts, with
``n`` the rank and ``k`` the block size:

* polynomial map ``entries``: per panel, per block, shape ``(n, k, k, deg + 1)``
  holding ascending coefficients of entry ``(r, c)`` of component ``j``;
* constant map ``value`` and indicator ``vectors[part]``: per block ``(n, k, k)``;
* tabulated map ``values``: per block ``(nodes, n, k, k)``;
* operator ``entries``: per block ``(n, n, k, k)`` with ``[j][i]`` the entry ``c[j][i]``;
* polynomial symbol ``coeffs``: per panel, a list of ascending coefficients.

Unknown fields anywhere are rejected.  :func:`validate` performs only shape,
partition and reference checks; :class:`Scenario` turns a validated document
into library objects.
"""

from __future__ import annotations

import json
from numbers import Real

import numpy as np

from .cstar import AlgebraDescriptor
from .module import ModuleOperator, ModuleVector
from .quadrature import (
    DEFAULT_ORDER,
    DEFAULT_SUBDIVISIONS,
    MeasureSpace,
    PolynomialMap,
    ProductSpace,
    TabulatedMap,
    indicator_partition_map,
)
from .symbols import ConstantSymbol, PolynomialSymbol, SeparableSymbol, TabulatedSymbol
from .tensor import TensorMap, op_tensor

SCHEMA_VERSION = 1

TOP_FIELDS = {"version", "seed", "description", "algebras", "spaces", "maps", "operators", "symbols", "tasks"}
ALGEBRA_FIELDS = {"blocks"}
SPACE_FIELDS = {"panels", "order", "subdivisions"}

MAP_FIELDS = {
    "polynomial": {"algebra", "space", "rank", "entries"},
    "constant": {"algebra", "space", "rank", "value"},
    "zero": {"algebra", "space", "rank"},
    "indicator": {"algebra", "space", "rank", "parts", "vectors"},
    "tabulated": {"algebra", "space", "rank", "values"},
    "tensor": {"left", "right"},
    "transform": {"map", "operator"},
    "scaled": {"map", "symbol"},
}
OPERATOR_FIELDS = {
    "entries": {"algebra", "rank", "entries"},
    "identity": {"algebra", "rank", "scale"},
    "tensor": {"left", "right"},
}
SYMBOL_FIELDS = {
    "polynomial": {"space", "coeffs"},
    "constant": {"value"},
    "tabulated": {"space", "values"},
    "separable": {"left", "right"},
}

# task name -> (map references, operator references, symbol references, other optional fields)
_PAIR = ("X", "Y")
_TENSOR = ("X1", "Y1", "X2", "Y2")
TASKS = {
    "verify_biframe": (_PAIR, (), (), {"tol", "probes"}),
    "adjoint_check": (_PAIR, (), (), {"tol"}),
    "characterization_check": (_PAIR, (), (), {"tol", "A"}),
    "transform_check": (_PAIR, ("operator",), (), {"tol"}),
    "dual_check": (_PAIR, (), (), {"tol", "dual", "canonical", "probes"}),
    "multiplier": (_PAIR, (), ("symbol",), {"tol"}),
    "multiplier_adjoint": (_PAIR, (), ("symbol",), {"tol"}),
    "multiplier_criteria": (_PAIR, (), ("symbol",), {"tol", "alpha", "beta", "probes"}),
    "multiplier_dual": (_PAIR, (), ("symbol",), {"tol"}),
    "tensor_check": (_TENSOR, (), (), {"tol"}),
    "tensor_factorization": (_TENSOR, (), (), {"tol"}),
    "tensor_invertibility": (_TENSOR, ("T1", "T2"), (), {"tol"}),
    "tensor_multiplier": (_TENSOR, (), ("symbol1", "symbol2"), {"tol"}),
}
TASK_COMMON = {"task", "label"}
REQUIRED_TASK_FIELDS = {"characterization_check": {"A"}}


class ScenarioError(Exception):
    """Raised with a list of diagnostics when a scenario does not validate."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(f"{d['path']}: {d['message']}" for d in self.diagnostics))


def load(path):
    """Read a scenario file; returns ``(document, raw_bytes)``.

    Raises
    ------
    ScenarioError
        If the file is not valid JSON.
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ScenarioError([{"path": "$", "message": f"parse error: {exc}"}]) from None
    return doc, raw


# ---------------------------------------------------------------- arrays


def complex_array(value):
    """Decode a JSON complex array (nested reals, or ``{"re", "im"}``)."""
    if isinstance(value, dict):
        re = np.asarray(value["re"], dtype=float)
        im = np.asarray(value["im"], dtype=float)
        if re.shape != im.shape:
            raise ValueError(f"re shape {re.shape} differs from im shape {im.shape}")
        return re + 1j * im
    return np.asarray(value, dtype=float).astype(complex)


def encode_complex(arr):
    """Inverse of :func:`complex_array`; purely real arrays stay plain lists."""
    arr = np.asarray(arr)
    if np.iscomplexobj(arr) and np.any(arr.imag != 0):
        return {"re": arr.real.tolist(), "im": arr.imag.tolist()}
    return np.real(arr).astype(float).tolist()


def _shape_of(value):
    """Shape of a JSON complex array without numerics beyond shape probing."""
    try:
        arr = complex_array(value)
    except (KeyError, TypeError, ValueError) as exc:
        return None, f"not a numeric array ({exc})"
    return arr.shape, None


# ------------------------------------------------------------ validation


class _Validator:
    def __init__(self, doc, quad=None):
        self.doc = doc
        self.quad = quad
        self.errors = []

    def err(self, path, message):
        self.errors.append({"path": path, "message": message})

    def fields(self, path, obj, allowed, required=None):
        if not isinstance(obj, dict):
            self.err(path, "expected an object")
            return False
        for key in sorted(set(obj) - set(allowed)):
            self.err(f"{path}.{key}", f"unknown field {key!r}")
        for key in sorted((allowed if required is None else required) - set(obj)):
            self.err(f"{path}.{key}", f"missing field {key!r}")
        return True

    def section(self, name):
        sec = self.doc.get(name, {})
        if not isinstance(sec, dict):
            self.err(name, "expected an object")
            return {}
        return sec

    def run(self):
        doc = self.doc
        if not isinstance(doc, dict):
            self.err("$", "scenario must be a JSON object")
            return self.errors
        for key in sorted(set(doc) - TOP_FIELDS):
            self.err(key, f"unknown field {key!r}")
        if "version" not in doc:
            self.err("version", "missing field")
        elif doc["version"] != SCHEMA_VERSION:
            self.err("version", f"unsupported version {doc['version']!r}, expected {SCHEMA_VERSION}")
        if "seed" in doc and (not isinstance(doc["seed"], int) or isinstance(doc["seed"], bool) or doc["seed"] < 0):
            self.err("seed", "seed must be a nonnegative integer")
        self.algebras = {}
        for name, a in self.section("algebras").items():
            self.algebra(f"algebras.{name}", name, a)
        self.spaces = {}
        for name, s in self.section("spaces").items():
            self.space(f"spaces.{name}", name, s)
        self.map_docs = self.section("maps")
        self.op_docs = self.section("operators")
        self.sym_docs = self.section("symbols")
        self.map_info = {}
        self.op_info = {}
        self.sym_info = {}
        for name in self.map_docs:
            self.map_shape(name, ())
        for name in self.op_docs:
            self.op_shape(name, ())
        for name in self.sym_docs:
            self.sym_domain(name, ())
        tasks = doc.get("tasks", [])
        if not isinstance(tasks, list):
            self.err("tasks", "expected a list")
        else:
            for i, t in enumerate(tasks):
                self.task(f"tasks[{i}]", t)
        return self.errors

    # -- algebras and spaces

    def algebra(self, path, name, a):
        if not self.fields(path, a, ALGEBRA_FIELDS):
            return
        blocks = a.get("blocks")
        if (
            not isinstance(blocks, list)
            or not blocks
            or not all(isinstance(k, int) and not isinstance(k, bool) and k >= 1 for k in blocks)
        ):
            self.err(f"{path}.blocks", "blocks must be a nonempty list of positive integers")
            return
        self.algebras[name] = tuple(blocks)

    def space(self, path, name, s):
        if not self.fields(path, s, SPACE_FIELDS, {"panels"}):
            return
        panels = s.get("panels")
        ok = isinstance(panels, list) and len(panels) > 0
        if ok:
            for p, pan in enumerate(panels):
                if not (
                    isinstance(pan, list)
                    and len(pan) == 2
                    and all(isinstance(v, Real) and not isinstance(v, bool) for v in pan)
                ):
                    self.err(f"{path}.panels[{p}]", "a panel is a pair of real numbers [a, b]")
                    ok = False
                elif not pan[0] < pan[1]:
                    self.err(f"{path}.panels[{p}]", f"panel [{pan[0]}, {pan[1]}] has nonpositive length")
                    ok = False
        else:
            self.err(f"{path}.panels", "panels must be a nonempty list")
        if ok:
            order = sorted(range(len(panels)), key=lambda p: panels[p][0])
            overlap = False
            for p, q in zip(order, order[1:]):
                if panels[q][0] < panels[p][1]:
                    self.err(f"{path}.panels", f"panels {p} and {q} overlap")
                    overlap = True
            if not overlap and order != sorted(order):
                self.err(f"{path}.panels", "panels must be listed in increasing order")
            ok = ok and not overlap and order == sorted(order)
        for key in ("order", "subdivisions"):
            v = s.get(key, 1)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                self.err(f"{path}.{key}", f"{key} must be a positive integer")
                ok = False
        if ok:
            order_ = s.get("order", DEFAULT_ORDER)
            subs = s.get("subdivisions", DEFAULT_SUBDIVISIONS)
            if self.quad is not None:
                order_, subs = self.quad
            self.spaces[name] = {"panels": len(panels), "nodes": len(panels) * order_ * subs}

    # -- references

    def ref(self, path, value, table, what):
        if not isinstance(value, str) or value not in table:
            # a defined but invalid algebra or space has already been reported
            section = self.doc.get(f"{what}s")
            if not (isinstance(value, str) and isinstance(section, dict) and value in section):
                self.err(path, f"unknown {what} {value!r}")
            return None
        return value

    def map_shape(self, name, stack):
        """``(block_sizes, rank, domain)`` for a map, or ``None`` when invalid."""
        if name in self.map_info:
            return self.map_info[name]
        path = f"maps.{name}"
        if name in stack:
            self.err(path, "cyclic map definition")
            return None
        self.map_info[name] = None
        m = self.map_docs[name]
        info = self._map_shape(path, m, stack + (name,))
        self.map_info[name] = info
        return info

    def _kind(self, path, obj, table):
        if not isinstance(obj, dict):
            self.err(path, "expected an object")
            return None
        kind = obj.get("kind")
        if kind not in table:
            self.err(f"{path}.kind", f"unknown kind {kind!r}; expected one of {sorted(table)}")
            return None
        self.fields(path, obj, table[kind] | {"kind"}, (table[kind] - {"scale"}) | {"kind"})
        return kind

    def _leaf_header(self, path, m):
        alg = self.ref(f"{path}.algebra", m.get("algebra"), self.algebras, "algebra")
        spc = self.ref(f"{path}.space", m.get("space"), self.spaces, "space")
        rank = m.get("rank")
        if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
            self.err(f"{path}.rank", "rank must be a positive integer")
            rank = None
        return alg, spc, rank

    def _per_block(self, path, arrs, blocks, shape_fn):
        if not isinstance(arrs, list) or len(arrs) != len(blocks):
            self.err(path, f"expected one array per algebra block ({len(blocks)})")
            return False
        ok = True
        for b, (arr, k) in enumerate(zip(arrs, blocks)):
            shape, problem = _shape_of(arr)
            if problem:
                self.err(f"{path}[{b}]", problem)
                ok = False
                continue
            expected = shape_fn(k)
            if not _shape_matches(shape, expected):
                self.err(f"{path}[{b}]", f"shape {shape}, expected {_describe(expected)}")
                ok = False
        return ok

    def _map_shape(self, path, m, stack):
        kind = self._kind(path, m, MAP_FIELDS)
        if kind is None:
            return None
        if kind in ("polynomial", "constant", "zero", "indicator", "tabulated"):
            alg, spc, rank = self._leaf_header(path, m)
            if alg is None or spc is None or rank is None:
                return None
            blocks = self.algebras[alg]
            n_panels = self.spaces[spc]["panels"]
            ok = True
            if kind == "polynomial":
                entries = m.get("entries")
                if not isinstance(entries, list) or len(entries) != n_panels:
                    self.err(f"{path}.entries", f"expected one entry set per panel ({n_panels})")
                    ok = False
                else:
                    for p, per_block in enumerate(entries):
                        ok &= self._per_block(f"{path}.entries[{p}]", per_block, blocks, lambda k: (rank, k, k, None))
            elif kind == "constant":
                ok = self._per_block(f"{path}.value", m.get("value"), blocks, lambda k: (rank, k, k))
            elif kind == "indicator":
                parts = m.get("parts")
                flat = []
                if not isinstance(parts, list) or not all(isinstance(p, list) for p in parts):
                    self.err(f"{path}.parts", "parts must be a list of lists of panel indices")
                    ok = False
                else:
                    flat = [i for p in parts for i in p]
                    if sorted(flat) != list(range(n_panels)) or any(not p for p in parts):
                        self.err(f"{path}.parts", f"parts must partition the {n_panels} panels of space {spc!r}")
                        ok = False
                    vecs = m.get("vectors")
                    if not isinstance(vecs, list) or len(vecs) != len(parts):
                        self.err(f"{path}.vectors", "expected one vector per part")
                        ok = False
                    else:
                        for j, v in enumerate(vecs):
                            ok &= self._per_block(f"{path}.vectors[{j}]", v, blocks, lambda k: (rank, k, k))
            elif kind == "tabulated":
                nodes = self.spaces[spc]["nodes"]
                ok = self._per_block(f"{path}.values", m.get("values"), blocks, lambda k: (nodes, rank, k, k))
            return (blocks, rank, spc) if ok else None
        if kind == "tensor":
            left = self.ref(f"{path}.left", m.get("left"), self.map_docs, "map")
            right = self.ref(f"{path}.right", m.get("right"), self.map_docs, "map")
            if left is None or right is None:
                return None
            a, b = self.map_shape(left, stack), self.map_shape(right, stack)
            if a is None or b is None:
                return None
            return (tuple(x * y for x in a[0] for y in b[0]), a[1] * b[1], (a[2], b[2]))
        if kind == "transform":
            base = self.ref(f"{path}.map", m.get("map"), self.map_docs, "map")
            op = self.ref(f"{path}.operator", m.get("operator"), self.op_docs, "operator")
            if base is None or op is None:
                return None
            a, t = self.map_shape(base, stack), self.op_shape(op, ())
            if a is None or t is None:
                return None
            if (a[0], a[1]) != t:
                self.err(path, f"operator {op!r} acts on blocks {list(t[0])}^{t[1]}, map is in {list(a[0])}^{a[1]}")
                return None
            return a
        if kind == "scaled":
            base = self.ref(f"{path}.map", m.get("map"), self.map_docs, "map")
            sym = self.ref(f"{path}.symbol", m.get("symbol"), self.sym_docs, "symbol")
            if base is None or sym is None:
                return None
            a, dom = self.map_shape(base, stack), self.sym_domain(sym, ())
            if a is None or dom is False:
                return None
            if dom is not None and dom != a[2]:
                self.err(path, f"symbol {sym!r} lives on {dom!r}, map on {a[2]!r}")
                return None
            return a
        return None

    def op_shape(self, name, stack):
        if name in self.op_info:
            return self.op_info[name]
        path = f"operators.{name}"
        if name in stack:
            self.err(path, "cyclic operator definition")
            return None
        self.op_info[name] = None
        o = self.op_docs[name]
        kind = self._kind(path, o, OPERATOR_FIELDS)
        info = None
        if kind in ("entries", "identity"):
            alg = self.ref(f"{path}.algebra", o.get("algebra"), self.algebras, "algebra")
            rank = o.get("rank")
            if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
                self.err(f"{path}.rank", "rank must be a positive integer")
                rank = None
            if alg is not None and rank is not None:
                blocks = self.algebras[alg]
                ok = True
                if kind == "entries":
                    ok = self._per_block(f"{path}.entries", o.get("entries"), blocks, lambda k: (rank, rank, k, k))
                elif "scale" in o:
                    shape, problem = _shape_of(o["scale"])
                    if problem or shape != ():
                        self.err(f"{path}.scale", "scale must be a scalar")
                        ok = False
                info = (blocks, rank) if ok else None
        elif kind == "tensor":
            left = self.ref(f"{path}.left", o.get("left"), self.op_docs, "operator")
            right = self.ref(f"{path}.right", o.get("right"), self.op_docs, "operator")
            if left is not None and right is not None:
                a, b = self.op_shape(left, stack + (name,)), self.op_shape(right, stack + (name,))
                if a is not None and b is not None:
                    info = (tuple(x * y for x in a[0] for y in b[0]), a[1] * b[1])
        self.op_info[name] = info
        return info

    def sym_domain(self, name, stack):
        """Domain of a symbol: a space name, a pair for separable, ``None`` for constants, ``False`` if invalid."""
        if name in self.sym_info:
            return self.sym_info[name]
        path = f"symbols.{name}"
        if name in stack:
            self.err(path, "cyclic symbol definition")
            return False
        self.sym_info[name] = False
        s = self.sym_docs[name]
        kind = self._kind(path, s, SYMBOL_FIELDS)
        dom = False
        if kind == "constant":
            shape, problem = _shape_of(s.get("value"))
            if problem or shape != ():
                self.err(f"{path}.value", "value must be a scalar")
            else:
                dom = None
        elif kind in ("polynomial", "tabulated"):
            spc = self.ref(f"{path}.space", s.get("space"), self.spaces, "space")
            if spc is not None:
                ok = True
                if kind == "polynomial":
                    coeffs = s.get("coeffs")
                    n_panels = self.spaces[spc]["panels"]
                    if not isinstance(coeffs, list) or len(coeffs) != n_panels:
                        self.err(f"{path}.coeffs", f"expected one coefficient list per panel ({n_panels})")
                        ok = False
                    else:
                        for p, c in enumerate(coeffs):
                            shape, problem = _shape_of(c)
                            if problem or len(shape) != 1 or shape[0] < 1:
                                self.err(f"{path}.coeffs[{p}]", "expected a nonempty list of coefficients")
                                ok = False
                else:
                    shape, problem = _shape_of(s.get("values"))
                    if problem or shape != (self.spaces[spc]["nodes"],):
                        self.err(f"{path}.values", f"expected {self.spaces[spc]['nodes']} node values")
                        ok = False
                dom = spc if ok else False
        elif kind == "separable":
            left = self.ref(f"{path}.left", s.get("left"), self.sym_docs, "symbol")
            right = self.ref(f"{path}.right", s.get("right"), self.sym_docs, "symbol")
            if left is not None and right is not None:
                a, b = self.sym_domain(left, stack + (name,)), self.sym_domain(right, stack + (name,))
                if a is not False and b is not False:
                    if a is None or b is None:
                        self.err(path, "separable factors must be polynomial or tabulated symbols")
                    else:
                        dom = (a, b)
        self.sym_info[name] = dom
        return dom

    # -- tasks

    def task(self, path, t):
        if not isinstance(t, dict):
            self.err(path, "expected an object")
            return
        name = t.get("task")
        if name not in TASKS:
            self.err(f"{path}.task", f"unknown task {name!r}; expected one of {sorted(TASKS)}")
            return
        maps, ops, syms, extra = TASKS[name]
        allowed = TASK_COMMON | set(maps) | set(ops) | set(syms) | extra
        required = {"task"} | set(maps) | set(ops) | set(syms) | REQUIRED_TASK_FIELDS.get(name, set())
        if name == "dual_check" and t.get("canonical", True) is False:
            required |= {"dual"}
        self.fields(path, t, allowed, required)
        shapes = {}
        for key in maps:
            if key in t and self.ref(f"{path}.{key}", t[key], self.map_docs, "map") is not None:
                shapes[key] = self.map_info.get(t[key])
        if "dual" in t and self.ref(f"{path}.dual", t["dual"], self.map_docs, "map") is not None:
            shapes["dual"] = self.map_info.get(t["dual"])
        for key in ops:
            if key in t:
                self.ref(f"{path}.{key}", t[key], self.op_docs, "operator")
        for key in syms:
            if key in t:
                self.ref(f"{path}.{key}", t[key], self.sym_docs, "symbol")
        for key in ("tol", "alpha", "beta", "A"):
            if key in t and (not isinstance(t[key], Real) or isinstance(t[key], bool)):
                self.err(f"{path}.{key}", f"{key} must be a real number")
        if "tol" in t and isinstance(t["tol"], Real) and t["tol"] < 0:
            self.err(f"{path}.tol", "tol must be nonnegative")
        if "probes" in t and (not isinstance(t["probes"], int) or isinstance(t["probes"], bool) or t["probes"] < 1):
            self.err(f"{path}.probes", "probes must be a positive integer")
        if "canonical" in t and not isinstance(t["canonical"], bool):
            self.err(f"{path}.canonical", "canonical must be a boolean")
        if "label" in t and not isinstance(t["label"], str):
            self.err(f"{path}.label", "label must be a string")
        self._coherence(path, t, name, shapes)

    def _coherence(self, path, t, name, shapes):
        def same(a, b):
            sa, sb = shapes.get(a), shapes.get(b)
            if sa is not None and sb is not None and sa != sb:
                self.err(path, f"{a} and {b} differ in algebra, rank or space")

        if name in ("tensor_check", "tensor_factorization", "tensor_invertibility", "tensor_multiplier"):
            same("X1", "Y1")
            same("X2", "Y2")
            for key in ("X1", "X2"):
                s = shapes.get(key)
                if s is not None and isinstance(s[2], tuple):
                    self.err(f"{path}.{key}", "tensor tasks take factor maps on measure spaces")
            if name == "tensor_invertibility":
                for op_key, map_key in (("T1", "X1"), ("T2", "X2")):
                    o = self.op_info.get(t.get(op_key))
                    s = shapes.get(map_key)
                    if o is not None and s is not None and o != (s[0], s[1]):
                        self.err(f"{path}.{op_key}", f"operator shape does not match {map_key}")
            if name == "tensor_multiplier":
                for sym_key, map_key in (("symbol1", "X1"), ("symbol2", "X2")):
                    dom = self.sym_info.get(t.get(sym_key), False)
                    s = shapes.get(map_key)
                    if dom not in (None, False) and s is not None and dom != s[2]:
                        self.err(f"{path}.{sym_key}", f"symbol domain does not match the space of {map_key}")
            return
        same("X", "Y")
        if "dual" in shapes:
            same("dual", "Y")
        if name == "transform_check":
            o = self.op_info.get(t.get("operator"))
            s = shapes.get("X")
            if o is not None and s is not None and o != (s[0], s[1]):
                self.err(f"{path}.operator", "operator shape does not match the maps")
        if "symbol" in TASKS[name][2]:
            dom = self.sym_info.get(t.get("symbol"), False)
            s = shapes.get("X")
            if dom not in (None, False) and s is not None and dom != s[2]:
                self.err(f"{path}.symbol", f"symbol lives on {dom!r}, maps on {s[2]!r}")


def _shape_matches(shape, expected):
    if shape is None or len(shape) != len(expected):
        return False
    return all(e is None and s >= 1 or s == e for s, e in zip(shape, expected))


def _describe(expected):
    return "(" + ", ".join("d" if e is None else str(e) for e in expected) + ")"


def validate(doc, quad=None):
    """Structural diagnostics for a scenario document (empty when valid).

    Each diagnostic is ``{"path": ..., "message": ...}``.  Nothing is
    integrated or factorized.
    """
    return _Validator(doc, quad).run()


# --------------------------------------------------------------- building


class Scenario:
    """Library objects built from a validated scenario document.

    Parameters
    ----------
    doc : dict
    quad : (int, int), optional
        ``(order, subdivisions)`` overriding the rule of every space.

    Raises
    ------
    ScenarioError
        If the document does not validate.
    """

    def __init__(self, doc, quad=None):
        problems = validate(doc, quad)
        if problems:
            raise ScenarioError(problems)
        self.doc = doc
        self.quad = quad
        self.seed = int(doc.get("seed", 0))
        self.tasks = list(doc.get("tasks", []))
        self.algebras = {k: AlgebraDescriptor(tuple(v["blocks"])) for k, v in doc.get("algebras", {}).items()}
        self.spaces = {}
        for name, s in doc.get("spaces", {}).items():
            order = s.get("order", DEFAULT_ORDER)
            subs = s.get("subdivisions", DEFAULT_SUBDIVISIONS)
            if quad is not None:
                order, subs = quad
            self.spaces[name] = MeasureSpace([tuple(p) for p in s["panels"]], order=order, subdivisions=subs)
        self._maps, self._ops, self._syms = {}, {}, {}

    def space_of(self, domain):
        if isinstance(domain, tuple):
            return ProductSpace(self.space_of(domain[0]), self.space_of(domain[1]))
        return self.spaces[domain]

    def map_domain(self, name):
        m = self.doc["maps"][name]
        if m["kind"] == "tensor":
            return (self.map_domain(m["left"]), self.map_domain(m["right"]))
        if m["kind"] in ("transform", "scaled"):
            return self.map_domain(m["map"])
        return m["space"]

    def map_space(self, name):
        return self.space_of(self.map_domain(name))

    def map(self, name):
        if name not in self._maps:
            self._maps[name] = self._build_map(self.doc["maps"][name])
        return self._maps[name]

    def operator(self, name):
        if name not in self._ops:
            self._ops[name] = self._build_operator(self.doc["operators"][name])
        return self._ops[name]

    def symbol(self, name):
        if name not in self._syms:
            self._syms[name] = self._build_symbol(self.doc["symbols"][name])
        return self._syms[name]

    def _build_map(self, m):
        kind = m["kind"]
        if kind == "tensor":
            return TensorMap(self.map(m["left"]), self.map(m["right"]))
        if kind == "transform":
            return self.map(m["map"]).transform(self.operator(m["operator"]))
        if kind == "scaled":
            return self.map(m["map"]).scaled(self.symbol(m["symbol"]))
        desc = self.algebras[m["algebra"]]
        space = self.spaces[m["space"]]
        rank = m["rank"]
        if kind == "polynomial":
            entries = [[complex_array(a) for a in per_block] for per_block in m["entries"]]
            return PolynomialMap.from_entries(desc, space.panels, entries)
        if kind == "constant":
            return PolynomialMap.constant(space.panels, _vector(desc, rank, m["value"]))
        if kind == "zero":
            return PolynomialMap.constant(space.panels, ModuleVector.zero(desc, rank))
        if kind == "indicator":
            vecs = [_vector(desc, rank, v) for v in m["vectors"]]
            return indicator_partition_map(space, m["parts"], vecs)
        if kind == "tabulated":
            values = []
            for arr, k in zip(m["values"], desc.block_sizes):
                a = complex_array(arr)  # (nodes, n, k, k): node, component, row, column
                values.append(np.transpose(a, (0, 2, 1, 3)).reshape(space.size, k, rank * k))
            return TabulatedMap(desc, rank, space, values)
        raise ValueError(kind)

    def _build_operator(self, o):
        kind = o["kind"]
        if kind == "tensor":
            return op_tensor(self.operator(o["left"]), self.operator(o["right"]))
        desc = self.algebras[o["algebra"]]
        rank = o["rank"]
        if kind == "identity":
            scale = complex(complex_array(o.get("scale", 1.0)))
            return ModuleOperator.identity(desc, rank) * scale
        reps = []
        for arr, k in zip(o["entries"], desc.block_sizes):
            a = complex_array(arr)  # (j, i, row, column) -> rep rows (j, row), columns (i, column)
            reps.append(np.transpose(a, (0, 2, 1, 3)).reshape(rank * k, rank * k))
        return ModuleOperator(desc, rank, reps)

    def _build_symbol(self, s):
        kind = s["kind"]
        if kind == "constant":
            return ConstantSymbol(complex(complex_array(s["value"])))
        if kind == "separable":
            return SeparableSymbol(self.symbol(s["left"]), self.symbol(s["right"]))
        space = self.spaces[s["space"]]
        if kind == "polynomial":
            return PolynomialSymbol(space.panels, [complex_array(c) for c in s["coeffs"]])
        return TabulatedSymbol(space, complex_array(s["values"]))


def _vector(desc, rank, per_block):
    rows = []
    for arr, k in zip(per_block, desc.block_sizes):
        a = complex_array(arr)  # (n, k, k): component, row, column
        rows.append(np.transpose(a, (1, 0, 2)).reshape(k, rank * k))
    return ModuleVector(desc, rank, rows)
