"""Identity schemas, their exhaustive basis-tuple checker, and polarization.

A schema is an expression-tree equation over op symbols, twist powers and
sorted variables.  Checking a multilinear schema against a concrete
interpretation means evaluating both sides on every tuple of basis vectors.
Schemas that repeat a variable are first reduced to multilinear ones by
inclusion-exclusion polarization, which is an equivalence in characteristic
zero for identities homogeneous in each variable.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import LinearMap, ShapeError, Vector


class SemanticError(ValueError):
    """Unbound symbol, bad sort, or other meaning-level problem."""


# ---------------------------------------------------------------------------
# expressions


class Expr:
    __slots__ = ()

    def __add__(self, other):
        return Sum(((Fraction(1), self), (Fraction(1), other)))

    def __sub__(self, other):
        return Sum(((Fraction(1), self), (Fraction(-1), other)))

    def __neg__(self):
        return Sum(((Fraction(-1), self),))

    def __rmul__(self, scalar):
        return Sum(((Fraction(scalar), self),))


class Var(Expr):
    __slots__ = ("name", "sort")

    def __init__(self, name: str, sort: str = "A"):
        self.name = name
        self.sort = sort

    def __repr__(self):
        return self.name


class TwistApp(Expr):
    __slots__ = ("map_symbol", "power", "child")

    def __init__(self, map_symbol: str, child: Expr, power: int = 1):
        self.map_symbol = map_symbol
        self.power = power
        self.child = child

    def __repr__(self):
        return f"{self.map_symbol}^{self.power}({self.child!r})"


class OpApp(Expr):
    __slots__ = ("op_symbol", "left", "right")

    def __init__(self, op_symbol: str, left: Expr, right: Expr):
        self.op_symbol = op_symbol
        self.left = left
        self.right = right

    def __repr__(self):
        return f"{self.op_symbol}({self.left!r},{self.right!r})"


class Sum(Expr):
    __slots__ = ("terms",)

    def __init__(self, terms):
        flat = []
        for w, e in terms:
            w = Fraction(w)
            if isinstance(e, Sum):
                flat.extend((w * w2, e2) for w2, e2 in e.terms)
            else:
                flat.append((w, e))
        self.terms = tuple(flat)

    def __repr__(self):
        return " + ".join(f"{w}*{e!r}" for w, e in self.terms)


ZERO = Sum(())


def var(name: str, sort: str = "A") -> Var:
    return Var(name, sort)


def op(op_symbol: str, left: Expr, right: Expr) -> OpApp:
    return OpApp(op_symbol, left, right)


def tw(map_symbol: str, child: Expr, power: int = 1) -> Expr:
    if power == 0:
        return child
    return TwistApp(map_symbol, child, power)


def _substitute(expr: Expr, name: str, replacement: Expr) -> Expr:
    if isinstance(expr, Var):
        return replacement if expr.name == name else expr
    if isinstance(expr, TwistApp):
        return TwistApp(expr.map_symbol, _substitute(expr.child, name, replacement), expr.power)
    if isinstance(expr, OpApp):
        return OpApp(
            expr.op_symbol,
            _substitute(expr.left, name, replacement),
            _substitute(expr.right, name, replacement),
        )
    if isinstance(expr, Sum):
        return Sum(tuple((w, _substitute(e, name, replacement)) for w, e in expr.terms))
    raise TypeError(expr)


def _occurrences(expr: Expr) -> dict:
    """Occurrence counts per variable; Sum branches must agree (homogeneity)."""
    if isinstance(expr, Var):
        return {expr.name: 1}
    if isinstance(expr, TwistApp):
        return _occurrences(expr.child)
    if isinstance(expr, OpApp):
        left = _occurrences(expr.left)
        right = _occurrences(expr.right)
        for k, n in right.items():
            left[k] = left.get(k, 0) + n
        return left
    if isinstance(expr, Sum):
        counts = [_occurrences(e) for _, e in expr.terms]
        if not counts:
            return {}
        first = counts[0]
        for c in counts[1:]:
            if c != first:
                raise SemanticError("sum terms are not homogeneous in the same variables")
        return dict(first)
    raise TypeError(expr)


def _collect_sorts(expr: Expr, sorts: dict) -> None:
    if isinstance(expr, Var):
        prev = sorts.get(expr.name)
        if prev is not None and prev != expr.sort:
            raise SemanticError(f"variable {expr.name} used with two sorts")
        sorts[expr.name] = expr.sort
    elif isinstance(expr, TwistApp):
        _collect_sorts(expr.child, sorts)
    elif isinstance(expr, OpApp):
        _collect_sorts(expr.left, sorts)
        _collect_sorts(expr.right, sorts)
    elif isinstance(expr, Sum):
        for _, e in expr.terms:
            _collect_sorts(e, sorts)


class IdentitySchema:
    """A named equation lhs = rhs over sorted variables.

    Variables are (name, sort, multiplicity) triples; a multiplicity above one
    marks the schema as non-multilinear in that variable.  For hand-written
    schemas the list is derived from the trees; polarize() supplies it
    explicitly for its multilinear output.
    """

    __slots__ = ("name", "lhs", "rhs", "variables", "polarized")

    def __init__(self, name, lhs, rhs, variables=None, polarized=False):
        self.name = name
        self.lhs = lhs
        self.rhs = rhs
        self.polarized = polarized
        if variables is not None:
            self.variables = tuple(variables)
            return
        sorts: dict = {}
        _collect_sorts(lhs, sorts)
        _collect_sorts(rhs, sorts)
        locc = _occurrences(lhs)
        rocc = _occurrences(rhs)
        out = []
        for vname in sorts:
            lo, ro = locc.get(vname, 0), rocc.get(vname, 0)
            mult = max(lo, ro)
            if lo not in (0, mult) or ro not in (0, mult):
                raise SemanticError(
                    f"schema {name!r} is not homogeneous in variable {vname!r}"
                )
            out.append((vname, sorts[vname], mult))
        self.variables = tuple(out)

    def is_multilinear(self) -> bool:
        return all(m <= 1 for _, _, m in self.variables)

    def __repr__(self):
        return f"IdentitySchema({self.name!r})"


def polarize(schema: IdentitySchema) -> IdentitySchema:
    """Replace every repeated variable by fresh ones via inclusion-exclusion.

    A variable x of multiplicity m becomes x__1..x__m and each side P turns
    into sum over nonempty S of {1..m} of (-1)^(m-|S|) P(sum_{i in S} x__i).
    In characteristic zero the original schema holds identically iff the
    polarized (multilinear) one holds on all basis tuples.
    """
    if schema.is_multilinear():
        return schema
    lhs, rhs = schema.lhs, schema.rhs
    new_vars = []
    for name, sort, mult in schema.variables:
        if mult <= 1:
            new_vars.append((name, sort, 1))
            continue
        fresh = [f"{name}__{i}" for i in range(1, mult + 1)]
        new_vars.extend((f, sort, 1) for f in fresh)
        lhs = _polarize_one(lhs, name, fresh, sort, mult)
        rhs = _polarize_one(rhs, name, fresh, sort, mult)
    return IdentitySchema(schema.name, lhs, rhs, variables=new_vars, polarized=True)


def _polarize_one(expr, name, fresh, sort, mult):
    terms = []
    members = [Var(f, sort) for f in fresh]
    for mask in range(1, 1 << mult):
        chosen = [members[i] for i in range(mult) if mask >> i & 1]
        summed = chosen[0] if len(chosen) == 1 else Sum(tuple((Fraction(1), c) for c in chosen))
        sign = Fraction(-1) ** (mult - len(chosen))
        terms.append((sign, _substitute(expr, name, summed)))
    return Sum(tuple(terms))


# ---------------------------------------------------------------------------
# interpretations and reports


@dataclass(frozen=True)
class Interpretation:
    """Bindings of sorts to dimensions and of op/map symbols to exact data.

    ops maps a symbol to (StructureTensor, (left_sort, right_sort, out_sort));
    maps to (LinearMap, (src_sort, dst_sort)).
    """

    sorts: dict
    ops: dict
    maps: dict

    def validate(self) -> None:
        for sym, (tensor, (ls, rs, os)) in self.ops.items():
            expect = (self.sorts[ls], self.sorts[rs], self.sorts[os])
            got = (tensor.left_dim, tensor.right_dim, tensor.out_dim)
            if expect != got:
                raise ShapeError(f"op {sym!r}: tensor dims {got} != sort dims {expect}")
        for sym, (lin, (ss, ds)) in self.maps.items():
            if (lin.src_dim, lin.dst_dim) != (self.sorts[ss], self.sorts[ds]):
                raise ShapeError(f"map {sym!r}: matrix dims disagree with sorts")


@dataclass(frozen=True)
class Witness:
    """A basis tuple on which an identity fails, with both evaluated sides."""

    identity: str
    variables: tuple          # (name, sort) per slot, in enumeration order
    indices: tuple            # 0-based basis index per slot
    lhs_value: Vector
    rhs_value: Vector

    def indices_1based(self):
        return tuple(i + 1 for i in self.indices)


@dataclass
class CheckReport:
    """Outcome of one certification run."""

    status: str               # pass | fail | not-admissible | error
    check: str
    witness: Optional[Witness] = None
    detail: str = ""
    tuples_checked: int = 0

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self):
        extra = f", witness={self.witness.identity}@{self.witness.indices}" if self.witness else ""
        return f"CheckReport({self.status}:{self.check}{extra})"


# ---------------------------------------------------------------------------
# evaluation


def _check_sorts(expr, interp: Interpretation):
    """Validate well-sortedness; returns the expression's sort (None for 0)."""
    if isinstance(expr, Var):
        return expr.sort
    if isinstance(expr, TwistApp):
        child = _check_sorts(expr.child, interp)
        if expr.map_symbol not in interp.maps:
            raise SemanticError(f"unbound map symbol {expr.map_symbol!r}")
        src, dst = interp.maps[expr.map_symbol][1]
        if src != dst and expr.power > 1:
            raise SemanticError(f"cannot iterate map {expr.map_symbol!r} across sorts")
        if child is not None and child != src:
            raise SemanticError(f"map {expr.map_symbol!r} applied to sort {child!r}")
        return dst
    if isinstance(expr, OpApp):
        if expr.op_symbol not in interp.ops:
            raise SemanticError(f"unbound op symbol {expr.op_symbol!r}")
        ls, rs, os_ = interp.ops[expr.op_symbol][1]
        lsort = _check_sorts(expr.left, interp)
        rsort = _check_sorts(expr.right, interp)
        if lsort is not None and lsort != ls:
            raise SemanticError(f"op {expr.op_symbol!r} left slot expects {ls!r}, got {lsort!r}")
        if rsort is not None and rsort != rs:
            raise SemanticError(f"op {expr.op_symbol!r} right slot expects {rs!r}, got {rsort!r}")
        return os_
    if isinstance(expr, Sum):
        sorts = {s for s in (_check_sorts(e, interp) for _, e in expr.terms) if s is not None}
        if len(sorts) > 1:
            raise SemanticError("sum mixes sorts")
        return sorts.pop() if sorts else None
    raise TypeError(expr)


class _Evaluator:
    def __init__(self, interp: Interpretation):
        self.interp = interp
        self._twists = {}

    def twist(self, symbol, power) -> LinearMap:
        key = (symbol, power)
        got = self._twists.get(key)
        if got is None:
            got = self.interp.maps[symbol][0].power(power)
            self._twists[key] = got
        return got

    def eval(self, expr, env, memo, zero_dim):
        key = id(expr)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(expr, Var):
            r = env[expr.name]
        elif isinstance(expr, OpApp):
            tensor = self.interp.ops[expr.op_symbol][0]
            r = tensor.apply(
                self.eval(expr.left, env, memo, zero_dim),
                self.eval(expr.right, env, memo, zero_dim),
            )
        elif isinstance(expr, TwistApp):
            r = self.twist(expr.map_symbol, expr.power).apply(
                self.eval(expr.child, env, memo, zero_dim)
            )
        elif isinstance(expr, Sum):
            if not expr.terms:
                r = Vector.zero(zero_dim)
            else:
                acc = None
                for w, e in expr.terms:
                    val = self.eval(e, env, memo, zero_dim)
                    if w != 1:
                        val = val.scale(w)
                    acc = val if acc is None else acc + val
                r = acc
        else:
            raise TypeError(expr)
        memo[key] = r
        return r


def evaluate(expr: Expr, env: dict, interp: Interpretation) -> Vector:
    """Evaluate an expression with variables bound to concrete Vectors."""
    sort = _check_sorts(expr, interp)
    dim = interp.sorts[sort] if sort is not None else 0
    return _Evaluator(interp).eval(expr, env, {}, dim)


def check_schema(schema: IdentitySchema, interp: Interpretation) -> CheckReport:
    """Exhaustively check a schema; non-multilinear schemas are polarized first.

    Both sides are evaluated on every tuple of basis vectors, enumerated
    lexicographically in variable declaration order; the first violating
    tuple becomes the witness.
    """
    check_id = f"schema:{schema.name}"
    try:
        working = polarize(schema)
        lsort = _check_sorts(working.lhs, interp)
        rsort = _check_sorts(working.rhs, interp)
    except (SemanticError, KeyError) as exc:
        raise SemanticError(f"{schema.name}: {exc}") from exc
    out_sort = lsort if lsort is not None else rsort
    if lsort is not None and rsort is not None and lsort != rsort:
        raise SemanticError(f"{schema.name}: sides have different sorts")
    out_dim = interp.sorts[out_sort] if out_sort is not None else 0

    names = [name for name, _, _ in working.variables]
    sorts = [sort for _, sort, _ in working.variables]
    for s in sorts:
        if s not in interp.sorts:
            raise SemanticError(f"{schema.name}: sort {s!r} has no dimension binding")
    dims = [interp.sorts[s] for s in sorts]
    basis = {d: [Vector.basis(d, i) for i in range(d)] for d in set(dims)}

    ev = _Evaluator(interp)
    count = 0
    for combo in itertools.product(*(range(d) for d in dims)):
        env = {names[i]: basis[dims[i]][combo[i]] for i in range(len(names))}
        memo: dict = {}
        count += 1
        lv = ev.eval(working.lhs, env, memo, out_dim)
        rv = ev.eval(working.rhs, env, memo, out_dim)
        if lv != rv:
            witness = Witness(
                identity=schema.name,
                variables=tuple(zip(names, sorts)),
                indices=combo,
                lhs_value=lv,
                rhs_value=rv,
            )
            return CheckReport("fail", check_id, witness=witness, tuples_checked=count)
    return CheckReport("pass", check_id, tuples_checked=count)


_RANDOM_NUMERATORS = tuple(range(-3, 4))
_RANDOM_DENOMINATORS = (1, 2, 3)


def check_schema_random(
    schema: IdentitySchema,
    interp: Interpretation,
    samples: int,
    seed: int,
    numerators=None,
    denominators=None,
) -> CheckReport:
    """Spot-check the original (un-polarized) schema on pseudo-random vectors.

    Used to cross-validate the polarization pass; draws are deterministic in
    the seed.  The coordinate pool defaults to numerators -3..3 over
    denominators 1..3 and can be overridden.
    """
    nums = tuple(numerators) if numerators else _RANDOM_NUMERATORS
    dens = tuple(denominators) if denominators else _RANDOM_DENOMINATORS
    check_id = f"schema-random:{schema.name}"
    lsort = _check_sorts(schema.lhs, interp)
    rsort = _check_sorts(schema.rhs, interp)
    out_sort = lsort if lsort is not None else rsort
    out_dim = interp.sorts[out_sort] if out_sort is not None else 0
    rng = random.Random(seed)
    ev = _Evaluator(interp)
    names = [name for name, _, _ in schema.variables]
    dims = [interp.sorts[sort] for _, sort, _ in schema.variables]
    for k in range(samples):
        env = {}
        for name, d in zip(names, dims):
            env[name] = Vector(
                [Fraction(rng.choice(nums), rng.choice(dens)) for _ in range(d)]
            )
        memo: dict = {}
        lv = ev.eval(schema.lhs, env, memo, out_dim)
        rv = ev.eval(schema.rhs, env, memo, out_dim)
        if lv != rv:
            return CheckReport(
                "fail", check_id, detail=f"sample {k} (seed {seed})", tuples_checked=k + 1
            )
    return CheckReport("pass", check_id, tuples_checked=samples)


def check_all(schemas, interp: Interpretation, check_id: str) -> CheckReport:
    """Run several schemas; pass iff all pass, else first failure's witness."""
    total = 0
    for schema in schemas:
        rep = check_schema(schema, interp)
        total += rep.tuples_checked
        if not rep.ok:
            return CheckReport(
                "fail", check_id, witness=rep.witness, tuples_checked=total,
                detail=f"violated schema {schema.name!r}",
            )
    return CheckReport("pass", check_id, tuples_checked=total)
