import pytest

from homalg.constructions import (
    ConstructionId,
    bimodule_map_dialgebra,
    crossed_module_check,
    differential_dialgebra,
    functor,
    graph_closure,
    hemisemi,
    induce,
    twist_products,
    yau_twist,
)
from homalg.exact import LinearMap
from homalg.forge import (
    diagonal_dialgebra,
    multiplication_operator,
    projection_operator,
    truncated_polynomial_algebra,
    two_dim_trialgebra,
    unital_nilpotent_3dim,
    zero_algebra,
)
from homalg.operators import OperatorCandidate, certify_operator, nijenhuis_of
from homalg.reps import (
    CertificationError,
    direct_sum_bimodule,
    jordan_module_from_bimodule,
    regular_action,
    regular_bimodule,
    tensor_square_bimodule,
)
from homalg.varieties import VarietyTag, certify

C = ConstructionId
V = VarietyTag


@pytest.fixture(scope="module")
def kx2():
    return truncated_polynomial_algebra(2)


def test_hemisemi_diass_regular(kx2):
    out = hemisemi(regular_bimodule(kx2), C.HEMISEMI_DIASS)
    assert out.dim == 4
    assert certify(out, V.HOM_ASSOCIATIVE_DIALGEBRA).ok


def test_hemisemi_triass_direct_sum(kx2):
    out = hemisemi(direct_sum_bimodule(kx2, 1), C.HEMISEMI_TRIASS)
    assert out.dim == 4
    assert certify(out, V.HOM_ASSOCIATIVE_TRIALGEBRA).ok


def test_hemisemi_zero_rep():
    z = zero_algebra(2)
    out = hemisemi(direct_sum_bimodule(z, 1), C.HEMISEMI_TRIASS)
    assert all(t.is_zero() for t in out.products.values())


def test_hemisemi_wrong_rep_kind(kx2):
    from homalg.engine import SemanticError

    with pytest.raises(SemanticError):
        hemisemi(regular_bimodule(kx2), C.HEMISEMI_LEIB)


def test_graph_theorem_positive_and_negative(kx2):
    ts = tensor_square_bimodule(kx2)
    mult = multiplication_operator(ts)
    assert graph_closure(mult, C.HEMISEMI_DIASS).ok
    bad = OperatorCandidate(regular_bimodule(kx2), LinearMap([[1, 0], [1, 0]]))
    report = graph_closure(bad, C.HEMISEMI_DIASS)
    assert report.status == "fail"
    # zero map: the graph is V itself and all products land back in it
    zero = OperatorCandidate(regular_bimodule(kx2), LinearMap.zero(2))
    assert graph_closure(zero, C.HEMISEMI_DIASS).ok


def test_induced_dialgebra(kx2):
    mult = multiplication_operator(tensor_square_bimodule(kx2))
    out = induce(mult, C.INDUCED_DIALGEBRA)
    assert out.dim == 4
    assert certify(out, V.HOM_ASSOCIATIVE_DIALGEBRA).ok


def test_induced_trialgebra_projection(kx2):
    p1 = projection_operator(direct_sum_bimodule(kx2, 2), 0)
    out = induce(p1, C.INDUCED_TRIALGEBRA)
    assert certify(out, V.HOM_ASSOCIATIVE_TRIALGEBRA).ok


def test_induced_zero_operator(kx2):
    zero = OperatorCandidate(regular_bimodule(kx2), LinearMap.zero(2))
    out = induce(zero, C.INDUCED_DIALGEBRA)
    assert all(t.is_zero() for t in out.products.values())


def test_induce_rejects_uncertified_operator(kx2):
    bad = OperatorCandidate(regular_bimodule(kx2), LinearMap([[1, 0], [1, 0]]))
    with pytest.raises(CertificationError):
        induce(bad, C.INDUCED_DIALGEBRA)


def test_commuting_square_dialgebra_to_jordan(kx2):
    # anti-dicommutator of the induced dialgebra coincides, as structure
    # constants, with the Jordan structure induced over the symmetrized base
    ts = tensor_square_bimodule(kx2)
    mult = multiplication_operator(ts)
    path1 = functor(induce(mult, C.INDUCED_DIALGEBRA), C.ANTI_DICOMMUTATOR)
    jmod = jordan_module_from_bimodule(ts)
    path2 = induce(OperatorCandidate(jmod, mult.map), C.INDUCED_JORDAN_DIALGEBRA)
    assert path1.product("bullet") == path2.product("bullet")
    assert certify(path1, V.HOM_JORDAN_DIALGEBRA).ok


def test_dicommutator_of_dialgebras(kx2):
    for dia in (diagonal_dialgebra(kx2),
                differential_dialgebra(unital_nilpotent_3dim(), "d")):
        out = functor(dia, C.DICOMMUTATOR)
        assert certify(out, V.HOM_LEIBNIZ).ok


def test_minus_on_commutative_base_is_abelian(kx2):
    out = functor(kx2, C.MINUS)
    assert out.product("bracket").is_zero()
    assert certify(out, V.HOM_LIE).ok


def test_tri_to_leibniz_on_twisted_example():
    tri = two_dim_trialgebra(2, 3, name="t23")
    out = functor(tri, C.TRI_TO_LEIBNIZ)
    assert certify(out, V.HOM_LEIBNIZ_TRIALGEBRA).ok
    # both products share their diagonal entries, so the brace collapses and
    # only the middle commutator survives: [e1, e2] = 3 e2 = -[e2, e1]
    brace, bracket = out.product("brace"), out.product("bracket")
    assert brace.is_zero()
    assert bracket.coeff(0, 1, 1) == 3 and bracket.coeff(1, 0, 1) == -3


def test_opposite_dialgebra(kx2):
    mult = multiplication_operator(tensor_square_bimodule(kx2))
    dia = induce(mult, C.INDUCED_DIALGEBRA)
    assert certify(functor(dia, C.OPPOSITE_DIALGEBRA), V.HOM_ASSOCIATIVE_DIALGEBRA).ok


def test_tridendriform_from_trialgebra():
    tri = two_dim_trialgebra(-1, 5, name="tm15")
    out = functor(tri, C.TRIDENDRIFORM)
    assert certify(out, V.HOM_TRIDENDRIFORM).ok
    assert out.product("prec") == tri.product("left").scale(-1)


def test_yau_twist_identity_map_is_identity():
    tri = two_dim_trialgebra(1, 1)
    out = yau_twist(tri, "alpha")  # alpha = id here
    for sym in tri.products:
        assert out.product(sym) == tri.product(sym)


def test_yau_twist_zero_map(kx2):
    from homalg.varieties import AlgebraInstance

    maps = kx2.maps | {"z": LinearMap.zero(2)}
    a = AlgebraInstance(kx2.name, kx2.dim, kx2.products, maps, kx2.variety)
    out = yau_twist(a, "z")
    assert all(t.is_zero() for t in out.products.values())
    assert out.alpha.is_zero()


def test_yau_twist_rejects_non_endomorphism():
    tri = two_dim_trialgebra(1, 1)
    with pytest.raises(CertificationError) as err:
        yau_twist(tri, "phi23")
    assert err.value.report.witness is not None


def test_yau_twist_endomorphism_pipeline():
    tri = two_dim_trialgebra(1, 1)
    out = yau_twist(tri, "phi12")
    assert certify(out, V.HOM_ASSOCIATIVE_TRIALGEBRA).ok
    assert out.alpha == LinearMap.diagonal([1, 2])


def test_twist_products_mechanical():
    tri = two_dim_trialgebra(1, 1)
    out = twist_products(tri, LinearMap.diagonal([2, 3]), "tri23x")
    assert out.product("right") == two_dim_trialgebra(2, 3).product("right")


def test_differential_dialgebra_preconditions(kx2):
    nil3 = unital_nilpotent_3dim()
    out = differential_dialgebra(nil3, "d")
    assert certify(out, V.HOM_ASSOCIATIVE_DIALGEBRA).ok
    # K[x]/(x^2) admits only the zero differential: d(1) = d(x) = 0
    from homalg.varieties import AlgebraInstance

    a = AlgebraInstance(kx2.name, 2, kx2.products,
                        kx2.maps | {"d": LinearMap.zero(2)}, kx2.variety)
    zd = differential_dialgebra(a, "d")
    assert all(t.is_zero() for t in zd.products.values())
    bad = AlgebraInstance(kx2.name, 2, kx2.products,
                          kx2.maps | {"d": LinearMap([[0, 0], [0, 1]])}, kx2.variety)
    with pytest.raises(CertificationError):
        differential_dialgebra(bad, "d")


def test_bimodule_map_dialgebra(kx2):
    # the identity on the regular bimodule of a unital algebra is a bimodule
    # map; its dialgebra has both products equal to the multiplication
    rep = regular_bimodule(kx2)
    out = bimodule_map_dialgebra(rep, LinearMap.identity(2))
    assert out.product("left") == kx2.product("mul")
    assert out.product("right") == kx2.product("mul")
    assert certify(out, V.HOM_ASSOCIATIVE_DIALGEBRA).ok
    with pytest.raises(CertificationError):
        bimodule_map_dialgebra(rep, LinearMap([[0, 1], [0, 0]]))


def test_bimodule_map_is_relative_averaging(kx2):
    rep = regular_bimodule(kx2)
    assert certify_operator(OperatorCandidate(rep, LinearMap.identity(2)), "rel-avg").ok


def test_crossed_module_examples(kx2):
    act = regular_action(kx2)
    assert crossed_module_check(kx2, act, LinearMap.identity(2)).ok
    # zero differential with zero action and product
    z = zero_algebra(2)
    zact = regular_action(z)
    assert crossed_module_check(z, zact, LinearMap.zero(2)).ok
    # d = 0 against a nonzero product fails the compatibility
    report = crossed_module_check(kx2, act, LinearMap.zero(2))
    assert report.status == "fail"
    assert report.witness.identity in ("peiffer-left", "peiffer-right", "morphism")


def test_equivalence_battery_small(kx2):
    # certifier, graph and lifted-Nijenhuis verdicts coincide over the
    # dialgebra-type ambient
    from homalg.forge import GridSpec, sample_operator_candidates

    rep = regular_bimodule(kx2)
    ambient = hemisemi(rep, C.HEMISEMI_DIASS, check=False)
    grid = GridSpec(numerators=(-1, 0, 1), denominators=(1,), seed=3, count=60)
    for cand in sample_operator_candidates(rep, grid):
        a = certify_operator(cand, "rel-avg").ok
        b = graph_closure(cand, C.HEMISEMI_DIASS, ambient=ambient).ok
        c = certify_operator(
            nijenhuis_of(cand, C.HEMISEMI_DIASS, ambient=ambient), "nijenhuis"
        ).ok
        assert a == b == c


def test_yau_twist_preserves_certification_over_found_endomorphisms(seed_catalog):
    from homalg.forge import GridSpec, find_endomorphisms
    from homalg.varieties import AlgebraInstance

    grid = GridSpec(numerators=(0, 1, 2), denominators=(1,))
    for aid in ("kx2", "tri11", "sol2", "j2"):
        a = seed_catalog[aid].value
        for k, phi in enumerate(find_endomorphisms(a, grid, mode="diagonal")):
            named = AlgebraInstance(a.name, a.dim, a.products,
                                    a.maps | {"phi": phi}, a.variety)
            out = yau_twist(named, "phi")  # the output gate re-certifies
            assert certify(out, a.variety).ok, (aid, k)


def test_hemisemi_all_catalog_reps(seed_catalog):
    from homalg.operators import hemisemi_id_for

    for entry in seed_catalog.values():
        if entry.kind != "rep":
            continue
        cid = hemisemi_id_for(entry.value)
        out = hemisemi(entry.value, cid, check=False)
        assert certify(out, out.variety).ok, (entry.id, cid.value)


def test_bimodule_map_route_agrees_with_induced_route(kx2):
    # the coordinate sum on A^2 is a bimodule map, and its dialgebra is the
    # same structure the induced-dialgebra theorem builds from it
    from homalg.forge import sum_operator

    rep = direct_sum_bimodule(kx2, 2)
    s = sum_operator(rep)
    via_map = bimodule_map_dialgebra(rep, s.map)
    via_induce = induce(s, C.INDUCED_DIALGEBRA)
    assert via_map.product("left") == via_induce.product("left")
    assert via_map.product("right") == via_induce.product("right")
