"""Representations and actions of associative, Lie and Jordan Hom-algebras.

Action tensors are stored with the algebra argument first: a mixed tensor
t with signature (A, V, V) holds t[i][j][k] = coefficient of u_k in the
image of (e_i, u_j).  In particular the right action r is stored as r(x)u
even though it is rendered r(x)u = u . x.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import (
    CheckReport,
    IdentitySchema,
    Interpretation,
    SemanticError,
    check_all,
    op,
    tw,
    var,
)
from .exact import LinearMap, ShapeError, StructureTensor
from .varieties import (
    AlgebraInstance,
    VarietyTag,
    certify,
    schemas_for,
)


class CertificationError(ValueError):
    """A gated builder received or produced data that fails certification."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def _gate(report: CheckReport, what: str) -> None:
    if not report.ok:
        raise CertificationError(f"{what}: {report!r}", report)


# ---------------------------------------------------------------------------
# types


@dataclass
class AssocBimodule:
    """Two action maps l, r on V with a twist beta, over an associative base."""

    base: AlgebraInstance
    v_dim: int
    l: StructureTensor
    r: StructureTensor
    beta: LinearMap

    kind = "bimodule"
    variety = VarietyTag.HOM_ASSOCIATIVE

    def __post_init__(self):
        n, m = self.base.dim, self.v_dim
        for sym, t in self.action_ops().items():
            if (t.left_dim, t.right_dim, t.out_dim) != (n, m, m):
                raise ShapeError(f"action tensor {sym!r} has wrong dims")
        if (self.beta.src_dim, self.beta.dst_dim) != (m, m):
            raise ShapeError("beta has wrong dims")
        for sym, t in self.v_ops().items():
            if t is None:
                raise SemanticError(f"{self.kind} requires a product {sym!r} on V")
            if (t.left_dim, t.right_dim, t.out_dim) != (m, m, m):
                raise ShapeError(f"product {sym!r} on V has wrong dims")

    def action_ops(self):
        return {"l": self.l, "r": self.r}

    def v_ops(self):
        return {}

    def interpretation(self) -> Interpretation:
        base = self.base.interpretation()
        sorts = dict(base.sorts)
        sorts["V"] = self.v_dim
        ops = dict(base.ops)
        for sym, t in self.action_ops().items():
            ops[sym] = (t, ("A", "V", "V"))
        for sym, t in self.v_ops().items():
            ops[sym] = (t, ("V", "V", "V"))
        maps = dict(base.maps)
        maps["beta"] = (self.beta, ("V", "V"))
        return Interpretation(sorts=sorts, ops=ops, maps=maps)


@dataclass
class AssocAction(AssocBimodule):
    """A bimodule where V also carries a compatible associative product."""

    vmul: StructureTensor = None

    kind = "action"

    def v_ops(self):
        return {"vmul": self.vmul}


@dataclass
class LieModule:
    base: AlgebraInstance
    v_dim: int
    rho: StructureTensor
    beta: LinearMap

    kind = "lie-module"
    variety = VarietyTag.HOM_LIE

    __post_init__ = AssocBimodule.__post_init__
    interpretation = AssocBimodule.interpretation

    def action_ops(self):
        return {"rho": self.rho}

    def v_ops(self):
        return {}


@dataclass
class LieAction(LieModule):
    vbracket: StructureTensor = None

    kind = "lie-action"

    def v_ops(self):
        return {"vbracket": self.vbracket}


@dataclass
class JordanModule:
    base: AlgebraInstance
    v_dim: int
    pi: StructureTensor
    beta: LinearMap

    kind = "jordan-module"
    variety = VarietyTag.HOM_JORDAN

    __post_init__ = AssocBimodule.__post_init__
    interpretation = AssocBimodule.interpretation

    def action_ops(self):
        return {"pi": self.pi}

    def v_ops(self):
        return {}


@dataclass
class JordanAction(JordanModule):
    vstar: StructureTensor = None

    kind = "jordan-action"

    def v_ops(self):
        return {"vstar": self.vstar}


REP_KINDS = ("bimodule", "action", "lie-module", "lie-action", "jordan-module", "jordan-action")


# ---------------------------------------------------------------------------
# axiom schemas

_x, _y, _z = var("x"), var("y"), var("z")
_u, _v, _w = var("u", "V"), var("v", "V"), var("w", "V")


def _a(e, k=1):
    return tw("alpha", e, k)


def _b(e, k=1):
    return tw("beta", e, k)


def _resort(schemas, sort):
    """Clone variety schemas with variables moved to another sort."""
    out = []
    for s in schemas:
        mapping = {name: var(name, sort) for name, _, _ in s.variables}
        out.append(
            IdentitySchema(
                f"{s.name}@{sort}",
                _sub_all(s.lhs, mapping),
                _sub_all(s.rhs, mapping),
            )
        )
    return out


def _sub_all(expr, mapping):
    from .engine import Sum, TwistApp, OpApp, Var

    if isinstance(expr, Var):
        return mapping.get(expr.name, expr)
    if isinstance(expr, TwistApp):
        sym = "beta" if expr.map_symbol == "alpha" else expr.map_symbol
        return TwistApp(sym, _sub_all(expr.child, mapping), expr.power)
    if isinstance(expr, OpApp):
        return OpApp(expr.op_symbol, _sub_all(expr.left, mapping), _sub_all(expr.right, mapping))
    if isinstance(expr, Sum):
        return Sum(tuple((w, _sub_all(e, mapping)) for w, e in expr.terms))
    raise TypeError(expr)


def _v_variety_schemas(tag: VarietyTag, rename: dict):
    """Variety schemas transplanted to sort V with its product names."""
    schemas = _resort(schemas_for(tag), "V")
    return [
        IdentitySchema(
            s.name,
            _rename_ops(s.lhs, rename),
            _rename_ops(s.rhs, rename),
            variables=s.variables,
        )
        for s in schemas
    ]


def _rename_ops(expr, rename):
    from .engine import Sum, TwistApp, OpApp, Var

    if isinstance(expr, Var):
        return expr
    if isinstance(expr, TwistApp):
        return TwistApp(expr.map_symbol, _rename_ops(expr.child, rename), expr.power)
    if isinstance(expr, OpApp):
        return OpApp(
            rename.get(expr.op_symbol, expr.op_symbol),
            _rename_ops(expr.left, rename),
            _rename_ops(expr.right, rename),
        )
    if isinstance(expr, Sum):
        return Sum(tuple((w, _rename_ops(e, rename)) for w, e in expr.terms))
    raise TypeError(expr)


def bimodule_schemas():
    L = lambda a, m: op("l", a, m)
    R = lambda a, m: op("r", a, m)
    mul = lambda a, c: op("mul", a, c)
    return [
        IdentitySchema("beta-left-intertwine", _b(L(_x, _u)), L(_a(_x), _b(_u))),
        IdentitySchema("beta-right-intertwine", _b(R(_x, _u)), R(_a(_x), _b(_u))),
        IdentitySchema("left-composition", L(mul(_x, _y), _b(_u)), L(_a(_x), L(_y, _u))),
        IdentitySchema("right-composition", R(mul(_x, _y), _b(_u)), R(_a(_y), R(_x, _u))),
        IdentitySchema("left-right-commute", L(_a(_x), R(_y, _u)), R(_a(_y), L(_x, _u))),
    ]


def assoc_action_schemas():
    L = lambda a, m: op("l", a, m)
    R = lambda a, m: op("r", a, m)
    VM = lambda m, m2: op("vmul", m, m2)
    extra = [
        IdentitySchema("action-left-product", L(_a(_x), VM(_u, _v)), VM(L(_x, _u), _b(_v))),
        IdentitySchema("action-right-product", R(_a(_x), VM(_u, _v)), VM(_b(_u), R(_x, _v))),
        IdentitySchema("action-inner-product", VM(_b(_u), L(_x, _v)), VM(R(_x, _u), _b(_v))),
    ]
    return (
        bimodule_schemas()
        + extra
        + _v_variety_schemas(VarietyTag.HOM_ASSOCIATIVE, {"mul": "vmul"})
    )


def lie_module_schemas():
    P = lambda a, m: op("rho", a, m)
    br = lambda a, c: op("bracket", a, c)
    return [
        IdentitySchema("module-intertwine", P(_a(_x), _b(_u)), _b(P(_x, _u))),
        IdentitySchema(
            "module-bracket",
            P(br(_x, _y), _b(_u)),
            P(_a(_x), P(_y, _u)) - P(_a(_y), P(_x, _u)),
        ),
    ]


def lie_action_schemas():
    P = lambda a, m: op("rho", a, m)
    VB = lambda m, m2: op("vbracket", m, m2)
    extra = [
        IdentitySchema(
            "action-bracket",
            P(_a(_x), VB(_u, _v)),
            VB(P(_x, _u), _b(_v)) + VB(_b(_u), P(_x, _v)),
        )
    ]
    return (
        lie_module_schemas()
        + extra
        + _v_variety_schemas(VarietyTag.HOM_LIE, {"bracket": "vbracket"})
    )


def jordan_module_schemas():
    P = lambda a, m: op("pi", a, m)
    C = lambda a, c: op("circ", a, c)
    s0 = IdentitySchema("module-intertwine", _b(P(_x, _u)), P(_a(_x), _b(_u)))
    s1 = IdentitySchema(
        "module-linear-1",
        P(_a(_x, 2), P(C(_y, _z), _b(_u)))
        + P(_a(_y, 2), P(C(_z, _x), _b(_u)))
        + P(_a(_z, 2), P(C(_x, _y), _b(_u))),
        P(C(_a(_x), _a(_y)), P(_a(_z), _b(_u)))
        + P(C(_a(_y), _a(_z)), P(_a(_x), _b(_u)))
        + P(C(_a(_z), _a(_x)), P(_a(_y), _b(_u))),
    )
    s2 = IdentitySchema(
        "module-linear-2",
        P(C(C(_x, _y), _a(_z)), _b(_u, 2))
        + P(_a(_x, 2), P(_a(_z), P(_y, _u)))
        + P(_a(_y, 2), P(_a(_z), P(_x, _u))),
        P(C(_a(_x), _a(_y)), P(_a(_z), _b(_u)))
        + P(C(_a(_y), _a(_z)), P(_a(_x), _b(_u)))
        + P(C(_a(_x), _a(_z)), P(_a(_y), _b(_u))),
    )
    return [s0, s1, s2]


def jordan_action_schemas():
    P = lambda a, m: op("pi", a, m)
    C = lambda a, c: op("circ", a, c)
    S = lambda m, m2: op("vstar", m, m2)
    cubic = IdentitySchema(
        "action-cubic",
        S(P(_a(_x), _b(_v)), S(_b(_v), _b(_v))),
        S(P(_a(_x), S(_v, _v)), _b(_v, 2)),
    )
    lin1 = IdentitySchema(
        "action-linear-1",
        S(S(P(_x, _u), _b(_w)), _b(_v, 2))
        + S(S(P(_x, _v), _b(_w)), _b(_u, 2))
        + P(_a(_x, 2), S(S(_u, _v), _b(_w))),
        S(P(_a(_x), S(_u, _v)), _b(_w, 2))
        + S(P(_a(_x), S(_u, _w)), _b(_v, 2))
        + S(P(_a(_x), S(_v, _w)), _b(_u, 2)),
    )
    rhs23 = (
        S(P(C(_x, _y), _b(_v)), _b(_u, 2))
        + P(_a(_x, 2), S(P(_y, _u), _b(_v)))
        + P(_a(_y, 2), S(P(_x, _u), _b(_v)))
    )
    lin2 = IdentitySchema(
        "action-linear-2",
        S(P(_a(_y), P(_x, _u)), _b(_v, 2))
        + S(P(_a(_y), P(_x, _v)), _b(_u, 2))
        + P(_a(_x, 2), P(_a(_y), S(_u, _v))),
        rhs23,
    )
    lin3 = IdentitySchema(
        "action-linear-3",
        S(P(_a(_y), _u), P(_a(_x), _v))
        + S(P(_a(_x), _u), P(_a(_y), _v))
        + P(C(_a(_x), _a(_y)), S(_b(_u), _b(_v))),
        rhs23,
    )
    return (
        jordan_module_schemas()
        + [cubic, lin1, lin2, lin3]
        + _v_variety_schemas(VarietyTag.HOM_JORDAN, {"circ": "vstar"})
    )


_SCHEMAS_BY_KIND = {
    "bimodule": bimodule_schemas,
    "action": assoc_action_schemas,
    "lie-module": lie_module_schemas,
    "lie-action": lie_action_schemas,
    "jordan-module": jordan_module_schemas,
    "jordan-action": jordan_action_schemas,
}


def certify_rep(rep) -> CheckReport:
    """Pass iff every axiom of the representation/action kind holds."""
    schemas = _SCHEMAS_BY_KIND[rep.kind]()
    return check_all(schemas, rep.interpretation(), f"rep:{rep.kind}")


# ---------------------------------------------------------------------------
# builders


def _left_regular(a: AlgebraInstance, sym: str) -> StructureTensor:
    return a.product(sym)


def _right_regular(a: AlgebraInstance, sym: str) -> StructureTensor:
    # r(x)u = u . x, stored algebra-argument first
    return a.product(sym).opposite()


def regular_bimodule(a: AlgebraInstance) -> AssocBimodule:
    """The adjoint bimodule: V = A, l(x)u = x.u, r(x)u = u.x, beta = alpha."""
    _gate(certify(a, VarietyTag.HOM_ASSOCIATIVE), f"regular_bimodule({a.name})")
    rep = AssocBimodule(a, a.dim, _left_regular(a, "mul"), _right_regular(a, "mul"), a.alpha)
    _gate(certify_rep(rep), f"regular_bimodule({a.name}) output")
    return rep


def regular_action(a: AlgebraInstance) -> AssocAction:
    _gate(certify(a, VarietyTag.HOM_ASSOCIATIVE), f"regular_action({a.name})")
    rep = AssocAction(
        a, a.dim, _left_regular(a, "mul"), _right_regular(a, "mul"), a.alpha,
        vmul=a.product("mul"),
    )
    _gate(certify_rep(rep), f"regular_action({a.name}) output")
    return rep


def regular_lie_action(a: AlgebraInstance) -> LieAction:
    """The adjoint action of a Hom-Lie algebra on itself."""
    _gate(certify(a, VarietyTag.HOM_LIE), f"regular_lie_action({a.name})")
    rep = LieAction(a, a.dim, a.product("bracket"), a.alpha, vbracket=a.product("bracket"))
    _gate(certify_rep(rep), f"regular_lie_action({a.name}) output")
    return rep


def regular_jordan_action(a: AlgebraInstance) -> JordanAction:
    """Multiplication action of a Hom-Jordan algebra on itself."""
    _gate(certify(a, VarietyTag.HOM_JORDAN), f"regular_jordan_action({a.name})")
    rep = JordanAction(a, a.dim, a.product("circ"), a.alpha, vstar=a.product("circ"))
    _gate(certify_rep(rep), f"regular_jordan_action({a.name}) output")
    return rep


def tensor_square_bimodule(a: AlgebraInstance) -> AssocBimodule:
    """V = A (x) A with l(x)(a(x)b) = (x.a)(x)b and r(x)(a(x)b) = a(x)(b.x).

    Basis ordering is row-major: e_i (x) e_j sits at index i*n + j.
    """
    _gate(certify(a, VarietyTag.HOM_ASSOCIATIVE), f"tensor_square_bimodule({a.name})")
    n = a.dim
    m = n * n
    mul = a.product("mul")
    l_rule = {}
    r_rule = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lrow = [0] * m
                rrow = [0] * m
                for t in range(n):
                    lrow[t * n + k] = mul.coeff(i, j, t)
                    rrow[j * n + t] = mul.coeff(k, i, t)
                l_rule[(i, j * n + k)] = lrow
                r_rule[(i, j * n + k)] = rrow
    l = StructureTensor.from_rule(n, m, m, l_rule)
    r = StructureTensor.from_rule(n, m, m, r_rule)
    beta = a.alpha.tensor(a.alpha)
    rep = AssocBimodule(a, m, l, r, beta)
    _gate(certify_rep(rep), f"tensor_square_bimodule({a.name}) output")
    return rep


def _componentwise(t: StructureTensor, copies: int, a_dim: int, slot: str) -> StructureTensor:
    """Spread a square or action tensor over V = A^copies, component by component."""
    n = a_dim
    m = n * copies
    rule = {}
    if slot == "action":
        for i in range(n):
            for c in range(copies):
                for j in range(n):
                    row = [0] * m
                    for k in range(n):
                        row[c * n + k] = t.coeff(i, j, k)
                    rule[(i, c * n + j)] = row
        return StructureTensor.from_rule(n, m, m, rule)
    for c in range(copies):
        for i in range(n):
            for j in range(n):
                row = [0] * m
                for k in range(n):
                    row[c * n + k] = t.coeff(i, j, k)
                rule[(c * n + i, c * n + j)] = row
    return StructureTensor.from_rule(m, m, m, rule)


def _beta_copies(alpha: LinearMap, copies: int) -> LinearMap:
    beta = alpha
    for _ in range(copies - 1):
        beta = beta.direct_sum(alpha)
    return beta


def direct_sum_bimodule(a: AlgebraInstance, n: int) -> AssocAction:
    """V = A^n with componentwise actions and componentwise product."""
    _gate(certify(a, VarietyTag.HOM_ASSOCIATIVE), f"direct_sum_bimodule({a.name},{n})")
    mul = a.product("mul")
    rep = AssocAction(
        a,
        a.dim * n,
        _componentwise(mul, n, a.dim, "action"),
        _componentwise(mul.opposite(), n, a.dim, "action"),
        _beta_copies(a.alpha, n),
        vmul=_componentwise(mul, n, a.dim, "product"),
    )
    _gate(certify_rep(rep), f"direct_sum_bimodule({a.name},{n}) output")
    return rep


def direct_sum_lie_action(a: AlgebraInstance, n: int) -> LieAction:
    _gate(certify(a, VarietyTag.HOM_LIE), f"direct_sum_lie_action({a.name},{n})")
    br = a.product("bracket")
    rep = LieAction(
        a,
        a.dim * n,
        _componentwise(br, n, a.dim, "action"),
        _beta_copies(a.alpha, n),
        vbracket=_componentwise(br, n, a.dim, "product"),
    )
    _gate(certify_rep(rep), f"direct_sum_lie_action({a.name},{n}) output")
    return rep


def direct_sum_jordan_action(a: AlgebraInstance, n: int) -> JordanAction:
    _gate(certify(a, VarietyTag.HOM_JORDAN), f"direct_sum_jordan_action({a.name},{n})")
    circ = a.product("circ")
    rep = JordanAction(
        a,
        a.dim * n,
        _componentwise(circ, n, a.dim, "action"),
        _beta_copies(a.alpha, n),
        vstar=_componentwise(circ, n, a.dim, "product"),
    )
    _gate(certify_rep(rep), f"direct_sum_jordan_action({a.name},{n}) output")
    return rep


# ---------------------------------------------------------------------------
# plus/minus transported representations


def plus_algebra(a: AlgebraInstance, name=None) -> AlgebraInstance:
    """Symmetrized product x o y = x.y + y.x on the same carrier."""
    mul = a.product("mul")
    return AlgebraInstance(
        name or f"{a.name}-plus",
        a.dim,
        {"circ": mul + mul.opposite()},
        {"alpha": a.alpha},
        VarietyTag.HOM_JORDAN,
    )


def minus_algebra(a: AlgebraInstance, name=None) -> AlgebraInstance:
    """Commutator bracket [x, y] = x.y - y.x on the same carrier."""
    mul = a.product("mul")
    return AlgebraInstance(
        name or f"{a.name}-minus",
        a.dim,
        {"bracket": mul - mul.opposite()},
        {"alpha": a.alpha},
        VarietyTag.HOM_LIE,
    )


def jordan_module_from_bimodule(rep: AssocBimodule) -> JordanModule:
    """pi = l + r over the symmetrized base algebra."""
    out = JordanModule(plus_algebra(rep.base), rep.v_dim, rep.l + rep.r, rep.beta)
    _gate(certify_rep(out), f"jordan_module_from_bimodule({rep.base.name})")
    return out


def jordan_action_from_action(rep: AssocAction) -> JordanAction:
    """pi = l + r and u * v = u.v + v.u over the symmetrized base."""
    out = JordanAction(
        plus_algebra(rep.base),
        rep.v_dim,
        rep.l + rep.r,
        rep.beta,
        vstar=rep.vmul + rep.vmul.opposite(),
    )
    _gate(certify_rep(out), f"jordan_action_from_action({rep.base.name})")
    return out


# ---------------------------------------------------------------------------
# semi-direct products


def _block_product(n, m, a_tensor, left_act, right_act, v_tensor):
    """Assemble (x+u)*(y+v) = x*y + left_act(x)v + right_act(y)u + u*v."""
    d = n + m
    rule = {}
    for i in range(d):
        for j in range(d):
            row = [0] * d
            if i < n and j < n:
                for k in range(n):
                    row[k] = a_tensor.coeff(i, j, k)
            elif i < n and j >= n and left_act is not None:
                for k in range(m):
                    row[n + k] = left_act.coeff(i, j - n, k)
            elif i >= n and j < n and right_act is not None:
                for k in range(m):
                    row[n + k] = right_act.coeff(j, i - n, k)
            elif i >= n and j >= n and v_tensor is not None:
                for k in range(m):
                    row[n + k] = v_tensor.coeff(i - n, j - n, k)
            rule[(i, j)] = row
    return StructureTensor.from_rule(d, d, d, rule)


def semidirect_product(act) -> AlgebraInstance:
    """The direct-sum carrier A + V with the action folded into one product."""
    _gate(certify_rep(act), f"semidirect_product({act.base.name})")
    n, m = act.base.dim, act.v_dim
    twist = act.base.alpha.direct_sum(act.beta)
    if isinstance(act, AssocAction):
        prod = _block_product(n, m, act.base.product("mul"), act.l, act.r, act.vmul)
        out = AlgebraInstance(
            f"{act.base.name}-semidirect", n + m, {"mul": prod}, {"alpha": twist},
            VarietyTag.HOM_ASSOCIATIVE,
        )
    elif isinstance(act, LieAction):
        br = _block_product(
            n, m, act.base.product("bracket"), act.rho, act.rho.scale(-1), act.vbracket
        )
        out = AlgebraInstance(
            f"{act.base.name}-semidirect", n + m, {"bracket": br}, {"alpha": twist},
            VarietyTag.HOM_LIE,
        )
    elif isinstance(act, JordanAction):
        circ = _block_product(
            n, m, act.base.product("circ"), act.pi, act.pi, act.vstar
        )
        out = AlgebraInstance(
            f"{act.base.name}-semidirect", n + m, {"circ": circ}, {"alpha": twist},
            VarietyTag.HOM_JORDAN,
        )
    else:
        raise SemanticError(f"semidirect product needs an action, got {act.kind}")
    _gate(certify(out, out.variety), f"semidirect_product({act.base.name}) output")
    return out


def semidirect_tensor(act):
    """The semidirect product tensor without the certification gates.

    Used by the action <-> semidirect round-trip tests, which feed
    deliberately broken actions.
    """
    n, m = act.base.dim, act.v_dim
    if isinstance(act, AssocAction):
        return _block_product(n, m, act.base.product("mul"), act.l, act.r, act.vmul)
    if isinstance(act, LieAction):
        return _block_product(
            n, m, act.base.product("bracket"), act.rho, act.rho.scale(-1), act.vbracket
        )
    if isinstance(act, JordanAction):
        return _block_product(n, m, act.base.product("circ"), act.pi, act.pi, act.vstar)
    raise SemanticError(f"semidirect product needs an action, got {act.kind}")
