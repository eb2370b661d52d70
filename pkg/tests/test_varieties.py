import pytest

from homalg.engine import SemanticError, check_schema
from homalg.exact import LinearMap, StructureTensor, Vector
from homalg.forge import (
    diagonal_dialgebra,
    truncated_polynomial_algebra,
    two_dim_trialgebra,
    two_dim_trialgebra_literal,
    unital_nilpotent_3dim,
)
from homalg.constructions import ConstructionId, differential_dialgebra, functor
from homalg.reps import CertificationError
from homalg.varieties import (
    AlgebraInstance,
    VarietyTag,
    certify,
    certify_multiplicative,
    classical_jordan_dialgebra_multilinear,
    classical_jordan_dialgebra_schemas,
    is_morphism,
)

V = VarietyTag


def test_two_dim_trialgebra_completion_certifies():
    assert certify(two_dim_trialgebra(1, 1), V.HOM_ASSOCIATIVE_TRIALGEBRA).ok


def test_two_dim_trialgebra_literal_reading_fails():
    # as first stated (no left diagonal) the bar identity already breaks
    report = certify(two_dim_trialgebra_literal(1, 1), V.HOM_ASSOCIATIVE_TRIALGEBRA)
    assert report.status == "fail"
    assert report.witness.identity == "bar-left"


def test_twisted_trialgebras_certify():
    assert certify(two_dim_trialgebra(2, 3), V.HOM_ASSOCIATIVE_TRIALGEBRA).ok
    assert certify(two_dim_trialgebra(-1, 5), V.HOM_ASSOCIATIVE_TRIALGEBRA).ok


def test_certify_fail_witness():
    bad = AlgebraInstance(
        "bad", 2,
        {"mul": StructureTensor.square_from_rule(2, {(0, 0): [0, 1], (1, 1): [1, 0]})},
        {"alpha": LinearMap.identity(2)},
    )
    report = certify(bad, V.HOM_ASSOCIATIVE)
    assert report.status == "fail" and report.witness.indices == (0, 0, 1)


def test_certify_missing_product_is_semantic_error():
    kx2 = truncated_polynomial_algebra(2)
    with pytest.raises(SemanticError):
        certify(kx2, V.HOM_LIE)


def test_certify_multiplicative():
    tri = two_dim_trialgebra(1, 1)
    assert certify_multiplicative(tri).ok
    # composing with a twist that is not an endomorphism breaks it: the
    # untwisted products with alpha = diag(2, 3) give alpha(e1 . e1) = 2 e1
    # but alpha(e1) . alpha(e1) = 4 e1
    products = dict(tri.products)
    skewed = AlgebraInstance("skewed", 2, products, {"alpha": LinearMap.diagonal([2, 3])})
    report = certify_multiplicative(skewed)
    assert report.status == "fail"
    assert report.witness.lhs_value == Vector([2, 0])
    assert report.witness.rhs_value == Vector([4, 0])


def test_is_morphism_identity_and_zero():
    kx2 = truncated_polynomial_algebra(2)
    assert is_morphism(LinearMap.identity(2), kx2, kx2).ok
    assert is_morphism(LinearMap.zero(2), kx2, kx2).ok


def test_is_morphism_diag23_on_trialgebra_fails():
    # the hand check on basis pairs: phi(e1 * e1) = 2 e1 but
    # phi(e1) * phi(e1) = 4 e1, for every product with the e1 diagonal
    tri = two_dim_trialgebra(1, 1)
    report = is_morphism(tri.maps["phi23"], tri, tri)
    assert report.status == "fail"
    assert report.witness.lhs_value == Vector([2, 0])
    assert report.witness.rhs_value == Vector([4, 0])


def test_is_morphism_diag12_on_trialgebra_passes():
    tri = two_dim_trialgebra(1, 1)
    assert is_morphism(tri.maps["phi12"], tri, tri).ok


def test_is_morphism_symbol_mismatch():
    kx2 = truncated_polynomial_algebra(2)
    tri = two_dim_trialgebra(1, 1)
    with pytest.raises(SemanticError):
        is_morphism(LinearMap.zero(2), kx2, tri)


def test_classical_degeneration_jordan_dialgebra():
    # for untwisted instances the short (polarized) classical identity list
    # and the displayed multilinear list agree with the certifier
    kx2 = truncated_polynomial_algebra(2)
    dia = diagonal_dialgebra(kx2)
    jd = functor(dia, ConstructionId.ANTI_DICOMMUTATOR, check=False)
    assert certify(jd, V.HOM_JORDAN_DIALGEBRA).ok
    interp = jd.interpretation()
    for schema in classical_jordan_dialgebra_schemas():
        assert check_schema(schema, interp).ok, schema.name
    for schema in classical_jordan_dialgebra_multilinear():
        assert check_schema(schema, interp).ok, schema.name


def test_classical_degeneration_detects_failure():
    bad = AlgebraInstance(
        "badjd", 2,
        {"bullet": StructureTensor.square_from_rule(2, {(0, 0): [0, 1], (1, 0): [1, 0]})},
        {"alpha": LinearMap.identity(2)},
    )
    short = [check_schema(s, bad.interpretation()).ok
             for s in classical_jordan_dialgebra_schemas()]
    multi = [check_schema(s, bad.interpretation()).ok
             for s in classical_jordan_dialgebra_multilinear()]
    assert not all(short) and not all(multi)


def test_di_to_tri_zero_middle_only_for_degenerate_triples():
    # adjoining a zero middle product forces (x left y) left alpha(z) = 0,
    # so it certifies exactly when triple products vanish
    nil3 = unital_nilpotent_3dim()
    dd = differential_dialgebra(nil3, "d")
    assert certify(functor(dd, ConstructionId.DI_TO_TRI), V.HOM_ASSOCIATIVE_TRIALGEBRA).ok
    kx2_dia = diagonal_dialgebra(truncated_polynomial_algebra(2))
    with pytest.raises(CertificationError):
        functor(kx2_dia, ConstructionId.DI_TO_TRI)
    report = certify(
        functor(kx2_dia, ConstructionId.DI_TO_TRI, check=False),
        V.HOM_ASSOCIATIVE_TRIALGEBRA,
    )
    assert report.status == "fail" and report.witness.identity == "middle-compat-1"


def test_all_tags_have_disjoint_witnessable_schemas():
    # antisymmetry and commutativity are separate schemas so their witnesses
    # are distinguishable from the main identities
    from homalg.varieties import schemas_for

    lie_names = [s.name for s in schemas_for(V.HOM_LIE)]
    assert "antisymmetry" in lie_names and "jacobi" in lie_names
    jordan_names = [s.name for s in schemas_for(V.HOM_JORDAN)]
    assert "commutativity" in jordan_names and "jordan" in jordan_names
