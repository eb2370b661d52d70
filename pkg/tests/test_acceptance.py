"""Acceptance suite.

Every check is exact (rational arithmetic, tolerance zero) and prints one
pass/fail line per criterion.  Three checks are red by design: they assert
stated reference behavior that is mathematically unattainable, and the test
bodies document the obstruction rather than weakening the assertion.
"""

import itertools
import json
from fractions import Fraction

from homalg.cli import main as cli_main
from homalg.constructions import (
    ConstructionId as C,
    functor,
    graph_closure,
    hemisemi,
    induce,
)
from homalg.engine import check_schema, check_schema_random
from homalg.exact import LinearMap, StructureTensor
from homalg.forge import (
    GridSpec,
    brute_oracle,
    catalog,
    data_dir,
    perturb_operator,
    random_interpretations,
    sample_operator_candidates,
    tensor_square_bimodule,
)
from homalg.operators import (
    OperatorCandidate,
    certify_operator,
    hemisemi_id_for,
    nijenhuis_of,
)
from homalg.reps import (
    AssocAction,
    AssocBimodule,
    CertificationError,
    JordanAction,
    JordanModule,
    direct_sum_bimodule,
    minus_algebra,
    plus_algebra,
)
from homalg.varieties import VarietyTag as V, certify


def announce(tag, ok, text):
    print(f"[{tag}] {'PASS' if ok else 'FAIL'} - {text}")
    return ok


# ---------------------------------------------------------------------------
# criterion 1: the two-dimensional trialgebra seed and its twists


def test_criterion_1a_trialgebra_and_twists_certify(seed_catalog):
    tri11 = seed_catalog["tri11"].value
    assert tri11.alpha == LinearMap.identity(2)
    ok = certify(tri11, V.HOM_ASSOCIATIVE_TRIALGEBRA).ok
    for name in ("tri23", "tri_m15"):
        ok = certify(seed_catalog[name].value, V.HOM_ASSOCIATIVE_TRIALGEBRA).ok and ok
    assert announce("criterion 1a", ok, "trialgebra seed certifies at id and both twists")


def test_criterion_1b_leibniz_trialgebra_brackets(seed_catalog):
    # Stated reference values: brace{e1,e1} = a.e1 and bracket[e1,e2] = b.e2
    # with every other structure constant zero.  For the certified twist both
    # source products carry the same diagonal entry, so the brace is forced
    # to vanish, and the bracket is antisymmetric, forcing [e2,e1] = -b.e2;
    # the stated tensor is therefore unattainable for any certified input.
    results = {}
    for name, (a, b) in (("tri23", (2, 3)), ("tri_m15", (-1, 5))):
        out = functor(seed_catalog[name].value, C.TRI_TO_LEIBNIZ)
        brace, bracket = out.product("brace"), out.product("bracket")
        expected_brace = StructureTensor.square_from_rule(2, {(0, 0): [a, 0]})
        expected_bracket = StructureTensor.square_from_rule(2, {(0, 1): [0, b]})
        results[name] = (brace == expected_brace and bracket == expected_bracket)
    ok = all(results.values())
    announce("criterion 1b", ok,
             "derived Leibniz-trialgebra brackets match the stated tensors exactly")
    assert ok, (
        "derived brackets differ from the stated reference tensors: the brace "
        "vanishes identically and the middle commutator has the forced "
        "antisymmetric entry [e2,e1] = -b e2"
    )


# ---------------------------------------------------------------------------
# criterion 2: relative-averaging example operators


def _assoc_entries_dim_le_3(seed_catalog):
    return [
        e.value for e in seed_catalog.values()
        if e.kind == "algebra"
        and e.value.variety is V.HOM_ASSOCIATIVE
        and e.value.dim <= 3
    ]


def test_criterion_2a_sum_and_projection_operators(seed_catalog):
    from homalg.forge import projection_operator, sum_operator

    ok = True
    for a in _assoc_entries_dim_le_3(seed_catalog):
        for n in (2, 3):
            rep = direct_sum_bimodule(a, n)
            ok = certify_operator(sum_operator(rep), "rel-avg").ok and ok
            for which in range(n):
                ok = certify_operator(
                    projection_operator(rep, which), "homomorphic-rel-avg"
                ).ok and ok
    assert announce("criterion 2a", ok,
                    "sum maps certify rel-avg and projections certify homomorphic "
                    "on A^n for every associative entry of dim <= 3")


def test_criterion_2b_tensor_square_multiplication_id_twist(seed_catalog):
    from homalg.forge import multiplication_operator

    ok = True
    for a in _assoc_entries_dim_le_3(seed_catalog):
        if a.alpha != LinearMap.identity(a.dim):
            continue
        rep = tensor_square_bimodule(a)
        ok = certify_operator(multiplication_operator(rep), "rel-avg").ok and ok
    assert announce("criterion 2b", ok,
                    "tensor-square multiplication certifies rel-avg over identity twists")


def test_criterion_2c_tensor_square_multiplication_twisted(seed_catalog):
    # Unattainable as stated: the printed tensor-square actions satisfy
    # l(x.y)beta = l(alpha x) l(y) only up to a missing twist on the second
    # tensor leg, so the bimodule itself fails certification whenever
    # alpha != id, and the multiplication map has no certified carrier.
    from homalg.forge import multiplication_operator

    failures = []
    for a in _assoc_entries_dim_le_3(seed_catalog):
        if a.alpha == LinearMap.identity(a.dim):
            continue
        try:
            rep = tensor_square_bimodule(a)
            ok_one = certify_operator(multiplication_operator(rep), "rel-avg").ok
        except CertificationError as exc:
            ok_one = False
            failures.append((a.name, str(exc)))
        if not ok_one:
            failures.append(a.name)
    ok = not failures
    announce("criterion 2c", ok,
             "tensor-square multiplication certifies rel-avg over twisted entries")
    assert ok, f"tensor-square bimodule axioms fail over twisted entries: {failures}"


# ---------------------------------------------------------------------------
# criterion 3: three-way equivalence battery


_SETTINGS = {
    "assoc-di": dict(
        reps=("kx2_reg", "kx2t_reg", "ut2_reg"),
        positives=("kx2_tensor_mult", "kx3_sum2_sum", "ut2_tensor_mult"),
        kind="rel-avg",
    ),
    "lie-di": dict(
        reps=("sol2_adj", "sol2t2_adj", "ab2_sum2"),
        positives=("sol2_adj_id", "sol2_sum2_sum", "sol2t2_sum2_sum"),
        kind="rel-avg",
    ),
    # kx3t2_jmod is exercised by criterion 4; its diag(1,2,4) twist confines
    # admissible maps to diagonals, which grid sampling cannot hit
    "jordan-di": dict(
        reps=("j2_adj", "kx2_jmod", "kx2t_jact"),
        positives=("j2_adj_id", "j2_sum2_sum"),
        kind="rel-avg",
    ),
    "assoc-tri": dict(
        reps=("kx2_sum2", "kx2_act", "ut2_act"),
        positives=("kx2_sum2_p1", "kx2_sum2_p2", "kx2_act_id", "ut2_act_id"),
        kind="homomorphic-rel-avg",
    ),
    "lie-tri": dict(
        reps=("sol2_adj", "sol2_sum2", "ab2_adj"),
        positives=("sol2_adj_id", "sol2_sum2_p1", "ab2_adj_id"),
        kind="homomorphic-rel-avg",
    ),
    "jordan-tri": dict(
        reps=("j2_adj", "kx2_jact", "kx2t_jact"),
        positives=("j2_adj_id", "j2_sum2_p1", "kx2_jact_p1"),
        kind="homomorphic-rel-avg",
    ),
}

_DI_AMBIENT = {
    "bimodule": C.HEMISEMI_DIASS, "action": C.HEMISEMI_DIASS,
    "lie-module": C.HEMISEMI_LEIB, "lie-action": C.HEMISEMI_LEIB,
    "jordan-module": C.HEMISEMI_DIJOR, "jordan-action": C.HEMISEMI_DIJOR,
}


def _battery(seed_catalog, name):
    setting = _SETTINGS[name]
    tri = name.endswith("tri")
    kind = setting["kind"]
    candidates = []
    for i, rid in enumerate(setting["reps"]):
        rep = seed_catalog[rid].value
        grid = GridSpec(numerators=(-1, 0, 1, 2), denominators=(1,),
                        seed=100 + i, count=30)
        candidates.extend(sample_operator_candidates(rep, grid, check=False))
    negatives = 0
    for pid in setting["positives"]:
        pos = seed_catalog[pid].value
        candidates.append(pos)
        for where in itertools.product(range(pos.map.dst_dim), range(pos.map.src_dim)):
            if negatives >= 12:
                break
            bent = perturb_operator(pos, where, Fraction(1))
            report = certify_operator(bent, kind)
            if report.status in ("fail", "not-admissible"):
                candidates.append(bent)
                negatives += 1
    assert len(candidates) >= 100, f"{name}: only {len(candidates)} candidates"
    assert negatives >= 10, f"{name}: only {negatives} perturbation negatives"

    ambients = {}
    disagreements = []
    certified = []
    for cand in candidates:
        rep = cand.rep
        ambient_id = hemisemi_id_for(rep) if tri else _DI_AMBIENT[rep.kind]
        key = (id(rep), ambient_id)
        if key not in ambients:
            ambients[key] = hemisemi(rep, ambient_id, check=False)
        ambient = ambients[key]
        a = certify_operator(cand, kind).ok
        b = graph_closure(cand, ambient_id, ambient=ambient).ok
        c = certify_operator(
            nijenhuis_of(cand, ambient_id, ambient=ambient), "nijenhuis"
        ).ok
        if not (a == b == c):
            disagreements.append((a, b, c, cand))
        if a:
            certified.append(cand)
    return disagreements, certified


_BATTERY_CERTIFIED = {}


def _battery_certified(seed_catalog, name):
    if name not in _BATTERY_CERTIFIED:
        _BATTERY_CERTIFIED[name] = _battery(seed_catalog, name)
    return _BATTERY_CERTIFIED[name]


def test_criterion_3a_equivalence_di_settings(seed_catalog):
    ok = True
    for name in ("assoc-di", "lie-di", "jordan-di"):
        disagreements, _ = _battery_certified(seed_catalog, name)
        ok = not disagreements and ok
    assert announce("criterion 3a", ok,
                    "certifier, graph and Nijenhuis verdicts agree in the di settings")


def test_criterion_3b_equivalence_tri_settings(seed_catalog):
    # Unattainable as stated: in each tri ambient the extra product couples
    # V with V only (middle product u.v, bracket [u,v], star u*v), so every
    # product against the image of N = (x+u -> Ku) has a vanishing V part
    # and the Nijenhuis right-hand side for that product collapses to zero.
    # The Nijenhuis verdict is therefore "relative averaging and all image
    # products vanish", not "homomorphic": it fails every nonzero
    # homomorphic positive and passes zero-image-product candidates that are
    # not homomorphisms.  Certifier and graph verdicts still coincide.
    report = {}
    for name in ("assoc-tri", "lie-tri", "jordan-tri"):
        disagreements, _ = _battery_certified(seed_catalog, name)
        report[name] = disagreements
        for a, b, c, _cand in disagreements:
            assert a == b, "certifier and graph verdicts must still coincide"
            assert c != a, "only the Nijenhuis leg may dissent"
    ok = not any(report.values())
    announce("criterion 3b", ok,
             "certifier, graph and Nijenhuis verdicts agree in the tri settings")
    assert ok, {
        name: f"{len(d)} Nijenhuis-leg disagreements" for name, d in report.items() if d
    }


# ---------------------------------------------------------------------------
# criterion 4: construction soundness


_INDUCED_FOR = {
    "bimodule": C.INDUCED_DIALGEBRA,
    "action": C.INDUCED_TRIALGEBRA,
    "lie-module": C.INDUCED_LEIBNIZ,
    "lie-action": C.INDUCED_TRILEIBNIZ,
    "jordan-module": C.INDUCED_JORDAN_DIALGEBRA,
    "jordan-action": C.INDUCED_JORDAN_TRIALGEBRA,
}


def test_criterion_4_construction_soundness(seed_catalog):
    ok = True
    # every hemisemi product of every certified catalog rep
    for entry in seed_catalog.values():
        if entry.kind != "rep":
            continue
        cid = hemisemi_id_for(entry.value)
        out = hemisemi(entry.value, cid, check=False)
        ok = certify(out, out.variety).ok and ok
    # every induced structure from every certified catalog operator
    dialgebras = [seed_catalog["kx2_diass"].value, seed_catalog["nil3_ddia"].value]
    for entry in seed_catalog.values():
        if entry.kind != "operator":
            continue
        cand = entry.value
        if entry.check_kind == "homomorphic-rel-avg":
            cid = _INDUCED_FOR[cand.rep.kind]
        else:
            base_kind = cand.rep.kind
            cid = {
                "bimodule": C.INDUCED_DIALGEBRA, "action": C.INDUCED_DIALGEBRA,
                "lie-module": C.INDUCED_LEIBNIZ, "lie-action": C.INDUCED_LEIBNIZ,
                "jordan-module": C.INDUCED_JORDAN_DIALGEBRA,
                "jordan-action": C.INDUCED_JORDAN_DIALGEBRA,
            }[base_kind]
        out = induce(cand, cid, check=False)
        ok = certify(out, out.variety).ok and ok
        if cid is C.INDUCED_DIALGEBRA:
            dialgebras.append(out)
    # dicommutator of every certified dialgebra
    for dia in dialgebras:
        ok = certify(functor(dia, C.DICOMMUTATOR, check=False), V.HOM_LEIBNIZ).ok and ok
    # minus/plus of every associative entry
    for entry in seed_catalog.values():
        if entry.kind == "algebra" and entry.value.variety is V.HOM_ASSOCIATIVE:
            ok = certify(minus_algebra(entry.value), V.HOM_LIE).ok and ok
            ok = certify(plus_algebra(entry.value), V.HOM_JORDAN).ok and ok
    assert announce("criterion 4", ok,
                    "hemisemi, induced, dicommutator and plus/minus outputs certify")


# ---------------------------------------------------------------------------
# criterion 5: exact coincidence of the two Jordan routes


def test_criterion_5_jordan_coincidences(seed_catalog):
    ok = True
    checked = 0
    _, assoc_di = _battery_certified(seed_catalog, "assoc-di")
    for cand in assoc_di:
        rep = cand.rep
        if not isinstance(rep, AssocBimodule):
            continue
        path1 = functor(induce(cand, C.INDUCED_DIALGEBRA, check=False),
                        C.ANTI_DICOMMUTATOR, check=False)
        jmod = JordanModule(plus_algebra(rep.base), rep.v_dim, rep.l + rep.r, rep.beta)
        path2 = induce(OperatorCandidate(jmod, cand.map),
                       C.INDUCED_JORDAN_DIALGEBRA, check=False)
        ok = (path1.product("bullet") == path2.product("bullet")) and ok
        ok = certify(path2, V.HOM_JORDAN_DIALGEBRA).ok and ok
        checked += 1
    _, assoc_tri = _battery_certified(seed_catalog, "assoc-tri")
    for cand in assoc_tri:
        rep = cand.rep
        path1 = functor(induce(cand, C.INDUCED_TRIALGEBRA, check=False),
                        C.TRI_TO_JORDAN, check=False)
        jact = JordanAction(plus_algebra(rep.base), rep.v_dim, rep.l + rep.r,
                            rep.beta, vstar=rep.vmul + rep.vmul.opposite())
        path2 = induce(OperatorCandidate(jact, cand.map),
                       C.INDUCED_JORDAN_TRIALGEBRA, check=False)
        ok = (path1.product("bullet") == path2.product("bullet")) and ok
        ok = (path1.product("circ") == path2.product("circ")) and ok
        ok = certify(path2, V.HOM_JORDAN_TRIALGEBRA).ok and ok
        checked += 1
    assert checked >= 10
    assert announce("criterion 5", ok,
                    f"anti-dicommutator and symmetrized-induction routes coincide "
                    f"({checked} operators)")


# ---------------------------------------------------------------------------
# criterion 6: o-operator weight resolution


def test_criterion_6_o_operator_weights(seed_catalog):
    ok = True
    checked = 0
    _, assoc_tri = _battery_certified(seed_catalog, "assoc-tri")
    for cand in assoc_tri:
        rep = cand.rep
        if not isinstance(rep, AssocAction):
            continue
        mul = rep.base.product("mul")
        has_nonzero = any(
            not mul.apply(cand.map.column(i), cand.map.column(j)).is_zero()
            for i in range(rep.v_dim) for j in range(rep.v_dim)
        )
        if not has_nonzero:
            continue
        neg = OperatorCandidate(
            rep, LinearMap([[-x for x in row] for row in cand.map.matrix])
        )
        ok = certify_operator(cand, "o-operator", weight=Fraction(-1)).ok and ok
        ok = certify_operator(neg, "o-operator", weight=Fraction(1)).ok and ok
        ok = (not certify_operator(neg, "o-operator", weight=Fraction(-1)).ok) and ok
        checked += 1
    assert checked >= 3
    note = {
        "note": "o-operator-weights",
        "observed": {"+H@-1": "pass", "-H@+1": "pass", "-H@-1": "fail"},
        "stated": {"-H@-1": "pass"},
        "operators_checked": checked,
    }
    print(json.dumps(note, sort_keys=True))
    assert announce("criterion 6", ok,
                    "weight resolution: (+H,-1) and (-H,+1) pass, (-H,-1) fails")


# ---------------------------------------------------------------------------
# criterion 7: oracle agreement


_BRUTE_FOR_TAG = {
    V.HOM_ASSOCIATIVE: ("hom-associativity", "mul"),
    V.HOM_LIE: ("hom-jacobi", "bracket"),
    V.HOM_LEIBNIZ: ("hom-leibniz", "brace"),
    V.HOM_ASSOCIATIVE_DIALGEBRA: ("dialgebra", "left"),
    V.HOM_ASSOCIATIVE_TRIALGEBRA: ("trialgebra", "left"),
}


def test_criterion_7_oracle_agreement(seed_catalog):
    from homalg.varieties import schemas_for

    ok = True
    for entry in seed_catalog.values():
        if entry.kind != "algebra" or entry.value.variety not in _BRUTE_FOR_TAG:
            continue
        a = entry.value
        tag = a.variety
        name, _sym = _BRUTE_FOR_TAG[tag]
        interp = a.interpretation()
        exact = certify(a, tag).ok
        ok = (brute_oracle(name, interp).ok == exact) and ok
        for schema in schemas_for(tag):
            sr = check_schema(schema, interp).ok
            for seed in range(5):
                ok = (check_schema_random(schema, interp, 50, seed).ok == sr) and ok
    # constructed instances cover the variety tags with no directly declared
    # catalog entry (Leibniz, Jordan dialgebra, the tri families, tridendriform)
    leib = functor(seed_catalog["kx2_diass"].value, C.DICOMMUTATOR, check=False)
    ok = brute_oracle("hom-leibniz", leib.interpretation()).ok and ok
    tri11 = seed_catalog["tri11"].value
    j2_id = seed_catalog["j2_adj_id"].value
    constructed = [
        (leib, V.HOM_LEIBNIZ),
        (functor(seed_catalog["kx2_diass"].value, C.ANTI_DICOMMUTATOR, check=False),
         V.HOM_JORDAN_DIALGEBRA),
        (functor(tri11, C.TRI_TO_LEIBNIZ, check=False), V.HOM_LEIBNIZ_TRIALGEBRA),
        (functor(tri11, C.TRIDENDRIFORM, check=False), V.HOM_TRIDENDRIFORM),
        (induce(j2_id, C.INDUCED_JORDAN_TRIALGEBRA, check=False),
         V.HOM_JORDAN_TRIALGEBRA),
    ]
    for inst, tag in constructed:
        interp = inst.interpretation()
        for schema in schemas_for(tag):
            sr = check_schema(schema, interp).ok
            ok = sr and ok
            for seed in range(5):
                ok = (check_schema_random(schema, interp, 50, seed).ok == sr) and ok
    # 200 seeded random tensors of dim <= 4
    from homalg.varieties import associativity_schema

    schema = associativity_schema()
    for interp in random_interpretations(200, seed=20260101):
        exact = check_schema(schema, interp).ok
        ok = (brute_oracle("hom-associativity", interp).ok == exact) and ok
        for seed in range(5):
            ok = (check_schema_random(schema, interp, 50, seed).ok == exact) and ok
    assert announce("criterion 7", ok,
                    "engine, brute-force and randomized verdicts agree everywhere")


# ---------------------------------------------------------------------------
# criterion 8: CLI contract


def test_criterion_8_cli_contract(tmp_path, capsys):
    data = data_dir()
    ok = True

    def run(*argv):
        code = cli_main(list(argv))
        captured = capsys.readouterr()
        return code, captured

    code, cap = run("check", str(data / "trialgebra.halg"),
                    "--variety", "hom-associative-trialgebra")
    ok = (code == 0) and ok
    records = [json.loads(l) for l in cap.out.splitlines()]
    ok = all(r["status"] == "pass" for r in records) and ok

    bad = tmp_path / "bad.halg"
    bad.write_text(
        "algebra broken dim 2\n  op mul: e1 * e1 = e2\n  op mul: e2 * e2 = e1\n"
        "  map alpha: e1 = e1\n  map alpha: e2 = e2\nend\n"
    )
    code, cap = run("check", str(bad), "--variety", "hom-associative")
    witness = json.loads(cap.out.splitlines()[0])["witness"]
    ok = (code == 1 and witness["tuple"] == [1, 1, 2]) and ok

    syntax = tmp_path / "syntax.halg"
    syntax.write_text("algebra oops dim 1\n  op mul e1 * e1 = e1\nend\n")
    code, _ = run("check", str(syntax), "--variety", "hom-associative")
    ok = (code == 2) and ok

    code, _ = run("check", str(data / "kx2.halg"), "--variety", "hom-lie")
    ok = (code == 3) and ok

    out = tmp_path / "pipe.halg"
    code, _ = run("construct", str(data / "kx2.halg"),
                  "--id", "hemisemi-diass", "--rep", "kx2_reg", "--out", str(out))
    ok = (code == 0) and ok
    code, _ = run("check", str(out), "--variety", "hom-associative-dialgebra")
    ok = (code == 0) and ok

    from homalg.dsl import parse, serialize

    text = out.read_text()
    ok = (serialize(parse(text)) == serialize(parse(serialize(parse(text))))) and ok

    assert announce("criterion 8", ok,
                    "exit codes, witness format and construct pipelines hold")
