"""Generation certificates: constructions, verdicts, and hypothesis gates."""

import json
import random
from fractions import Fraction

import pytest

import algcert as ac
from algcert import certificates as cc
from algcert import formats
from helpers import elem, m2, m3, m4, unit_elem


def test_derived_subspace_m2():
    P = m2()
    d = cc.derived_subspace(P)
    assert d.rank == 3  # trace-zero matrices
    assert cc.commutator_span(P) == d


def test_derived_K_m3_flip():
    # Brute-force brackets of the K basis: K is three-dimensional and its
    # commutators already span it.
    P = m3("flip")
    d = cc.derived_K_subspace(P)
    assert d.rank == 3
    assert d == ac.kh_split(P).K


def test_derived_example1():
    P = ac.build_example1(8)
    d = cc.derived_subspace(P)
    assert d.rank == 8


def test_lemma1_pass_m2_m3():
    c2 = ac.lemma1_certificate(m2())
    assert c2.verdict == "pass"
    assert c2.trace.final_rank == 3
    c3 = ac.lemma1_certificate(m3())
    assert c3.verdict == "pass"
    assert c3.trace.final_rank == 8


def test_lemma1_hypothesis_not_met_example1():
    c = ac.lemma1_certificate(ac.build_example1(4))
    assert c.verdict == "hypothesis-not-met"
    assert "R(1-e)R=R" in c.detail["failed_hypotheses"]


def test_lemma2_m2():
    P = m2()
    gens = ac.lemma2_generating_set(P)
    minus = [el for (_, el, _), s in zip(gens.elements, gens.sides) if s == "-"]
    plus = [el for (_, el, _), s in zip(gens.elements, gens.sides) if s == "+"]
    assert P.span_of(minus).basis == (unit_elem(P, "E12").coords,)
    assert P.span_of(plus).basis == (unit_elem(P, "E21").coords,)
    cert = ac.lemma2_certificate(P)
    assert cert.verdict == "pass"
    assert cert.detail["d"] == 1
    assert cert.detail["component_dims"] == (1, 1)


def test_lemma2_m3():
    cert = ac.lemma2_certificate(m3())
    assert cert.verdict == "pass"
    assert cert.detail["component_dims"] == (2, 2)


def test_lemma2_missing_generators():
    d = formats.presentation_to_dict(m2())
    d["generators"] = {}
    P = formats.presentation_from_dict(d)
    with pytest.raises(ac.errors.MissingGeneratorsError):
        ac.lemma2_generating_set(P)


def test_lemma2_cap_exceeded():
    # With only E11 declared, no sandwich word span over f = 1 - E11 can
    # express E11, so the witness search must hit its cap.
    d = formats.presentation_to_dict(m2())
    d["generators"] = {"E11": d["generators"]["E11"]}
    P = formats.presentation_from_dict(d)
    with pytest.raises(ac.errors.CapExceededError):
        ac.lemma2_generating_set(P, cap=3)


def test_lemma2_rejects_non_generating_set():
    d = formats.presentation_to_dict(m2())
    d["generators"] = {"E12": d["generators"]["E12"]}
    P = formats.presentation_from_dict(d)
    cert = ac.lemma2_certificate(P)
    assert cert.verdict == "hypothesis-not-met"
    assert "R=alg<gens>" in cert.detail["failed_hypotheses"]


def test_lemma3_m2_and_m3():
    for P in (m2(), m3()):
        gens = ac.lemma2_generating_set(P)
        cert = ac.lemma3_jordan_check(P, gens, seed=4, samples=100)
        assert cert.verdict == "pass"
        assert cert.detail["identity_checks"] == 200


def test_theorem1_matrix_family():
    for n in (2, 3, 4):
        P = ac.build_matrix_algebra(n)
        cert = ac.theorem1_certify(P, seed=1)
        assert cert.verdict == "pass"
        assert cert.trace.final_rank == n * n - 1
        assert cert.target.rank == n * n - 1
        assert cert.detail["jordan_generation_ok"]
        # soundness: the closed final subspace equals the target exactly
        assert cert.trace.final == cert.target


def test_theorem1_hypothesis_gates():
    c = ac.theorem1_certify(ac.build_example1(8))
    assert c.verdict == "hypothesis-not-met"
    P = m2()
    c2 = ac.theorem1_certify(P, e=P.unit)
    assert c2.verdict == "hypothesis-not-met"
    assert "R(1-e)R=R" in c2.detail["failed_hypotheses"]


def test_theorem1_generator_relabeling_invariance():
    P = m3()
    base = ac.theorem1_certify(P)
    d = formats.presentation_to_dict(P)
    names = sorted(d["generators"])
    # Reverse the name order by relabeling; sorted iteration now visits the
    # underlying elements in the opposite order.
    d["generators"] = {
        f"w{len(names) - i}": d["generators"][name] for i, name in enumerate(names)
    }
    Q = formats.presentation_from_dict(d)
    other = ac.theorem1_certify(Q)
    assert other.verdict == base.verdict == "pass"
    assert other.trace.final == base.trace.final


def test_lemma4_m3_flip_with_witness():
    P = m3("flip")
    cert = ac.lemma4_check(P)
    assert cert.verdict == "pass"
    # Hand witness: k = E32 - E21 spans K_1 and k^2 = -E31 spans H_2.
    k = elem(P, {"E32": 1, "E21": -1})
    grading = ac.z_grading(P, P.idempotents["e"])
    kh = ac.kh_split(P, grading)
    assert kh.graded[1][0] == P.span_of([k])
    assert P.mul(k, k) == elem(P, {"E31": -1})
    assert kh.graded[2][1] == P.span_of([P.mul(k, k)])
    assert kh.graded[2][0].rank == 0


def test_lemma4_m4_flip_needs_polarization():
    P = m4("flip")
    cert = ac.lemma4_check(P)
    assert cert.verdict == "pass"
    # Basis squares vanish; only the cross term (k1+k2)^2 reaches H_2.
    kh = ac.kh_split(P, ac.z_grading(P, P.idempotents["e"]))
    K1 = kh.graded[1][0]
    rows = [P.element(r) for r in K1.basis]
    assert all(P.is_zero(P.mul(k, k)) for k in rows)
    cross = P.add(rows[0], rows[1])
    assert not P.is_zero(P.mul(cross, cross))


def test_lemma4_hypothesis_not_met_symplectic():
    cert = ac.lemma4_check(m2("symplectic"))
    assert cert.verdict == "hypothesis-not-met"
    assert "R(1-e-e*)R=R" in cert.detail["failed_hypotheses"]


def test_lemma5_m3_flip_exact_sets():
    P = m3("flip")
    M_minus, M_plus, info = ac.lemma5_sets(P)
    assert info["spans_ok"]
    minus_span = P.span_of([el for _, el, _ in M_minus.elements])
    assert minus_span == P.span_of([elem(P, {"E12": 1, "E23": -1})])
    plus_span = P.span_of([el for _, el, _ in M_plus.elements])
    assert plus_span == P.span_of([elem(P, {"E32": 1, "E21": -1})])
    # (E12 - E23) * E31 = -E21 and E31 * (E12 - E23) = E32 span R_1.
    g = ac.z_grading(P, P.idempotents["e"])
    m = elem(P, {"E12": 1, "E23": -1})
    e31 = unit_elem(P, "E31")
    assert P.mul(m, e31) == elem(P, {"E21": -1})
    assert P.mul(e31, m) == unit_elem(P, "E32")
    assert P.span_of([P.mul(m, e31), P.mul(e31, m)]) == g.parts[1]


def test_lemma5_m4_flip():
    cert = ac.lemma5_certificate(m4("flip"))
    assert cert.verdict == "pass"
    assert cert.detail["sizes"] == (2, 2)


def test_lemma5_vacuous_symplectic():
    cert = ac.lemma5_certificate(m2("symplectic"))
    assert cert.verdict == "pass"
    assert cert.detail["sizes"] == (0, 0)
    assert cert.detail["odd_component_dims"] == (0, 0)


def test_lemma6_m3_m4():
    c3 = ac.lemma6_check(m3("flip"))
    assert c3.verdict == "pass" and c3.trace.final_rank == 3
    c4 = ac.lemma6_check(m4("flip"))
    assert c4.verdict == "pass" and c4.trace.final_rank == 6


def test_lemma6_hypothesis_symplectic():
    cert = ac.lemma6_check(m2("symplectic"))
    assert cert.verdict == "hypothesis-not-met"


def test_theorem2_m3_m4():
    c3 = ac.theorem2_certify(m3("flip"), seed=7)
    assert c3.verdict == "pass"
    assert c3.trace.final_rank == 3
    assert c3.trace.final == cc.derived_K_subspace(m3("flip"))
    c4 = ac.theorem2_certify(m4("flip"), seed=7)
    assert c4.verdict == "pass"
    assert c4.trace.final_rank == 6


def test_theorem2_hypothesis_gates():
    c = ac.theorem2_certify(ac.build_example2(4))
    assert c.verdict == "hypothesis-not-met"
    assert "R(1-e-e*)R=R" in c.detail["failed_hypotheses"]
    c1 = ac.theorem2_certify(ac.build_example1(4))
    assert c1.verdict == "hypothesis-not-met"
    assert "involution" in c1.detail["failed_hypotheses"]


def test_lemma7_m4_flip():
    cert = ac.lemma7_reduction_check(m4("flip"), trials=10, seed=2)
    assert cert.verdict == "pass"
    assert cert.detail["failed_trials"] == []


def test_lemma7_symplectic_first_case():
    # K_{-2} and K_2 are nonzero here, so sampled products frequently end in
    # K_{-2}K_2 directly, the trivially-reducible case.
    cert = ac.lemma7_reduction_check(m2("symplectic"), trials=10, seed=3)
    assert cert.verdict == "pass"
    assert cert.detail["corner_dims"]["K_2"] == 1


def test_lemma7_degenerate_zero_factor():
    P = m4("flip")
    grading = ac.z_grading(P, P.idempotents["e"])
    kh = ac.kh_split(P, grading)
    zero = P.zero()
    a = P.element(kh.graded[2][1].basis[0])
    w = P.mul(P.mul(a, zero), a)
    assert P.is_zero(w)  # zero factors collapse the product into every span


def test_lemma8_symplectic():
    cert = ac.lemma8_check(m2("symplectic"))
    assert cert.verdict == "pass"
    assert cert.trace.final_rank == 4


def test_lemma8_hypothesis_transpose():
    cert = ac.lemma8_check(m2("transpose"))
    assert cert.verdict == "hypothesis-not-met"
    assert "e+e*=1" in cert.detail["failed_hypotheses"]


def test_lemma9_transpose():
    P = m2("transpose")
    cert = ac.lemma9_check(P, samples=10, seed=5)
    assert cert.verdict == "pass"
    # k = E12 - E21 squares to -(E11 + E22), so k*k*k = -k != 0.
    k = elem(P, {"E12": 1, "E21": -1})
    assert P.mul(P.mul(k, k), k) == P.neg(k)


def test_lemma9_example2_not_semiprime():
    cert = ac.lemma9_check(ac.build_example2(1), seed=5)
    assert cert.verdict == "hypothesis-not-met"
    assert cert.detail["hypotheses"]["semiprime(desk-scale)"] is False
    assert cert.detail["square-zero-ideal-witness"] is not None
    assert cert.detail["skew-annihilator-witness"] is not None


def test_stagnation_example1():
    P = ac.build_example1(8)
    target = cc.derived_subspace(P)
    cert = ac.stagnation_probe(P, target, trials=50, max_gen=5, seed=11)
    assert cert.verdict == "pass"
    assert cert.detail["bracket_abelian"]
    assert cert.detail["max_rank_achieved"] <= 5 < target.rank


def test_stagnation_example2():
    P = ac.build_example2(8)
    target = cc.derived_K_subspace(P)
    assert target.rank == 16
    cert = ac.stagnation_probe(P, target, trials=30, max_gen=5, seed=11)
    assert cert.verdict == "pass"
    assert cert.detail["bracket_abelian"]


def test_stagnation_probe_detects_generation():
    # sl2 is reachable from two generic elements, so the probe must report
    # that generation happened rather than certify stagnation.
    P = m2()
    target = cc.derived_subspace(P)
    cert = ac.stagnation_probe(P, target, trials=10, max_gen=2, seed=3)
    assert cert.verdict == "fail"
    assert cert.detail["reached_target_count"] > 0


def test_stagnation_requires_closed_target():
    P = m2()
    open_span = P.span_of([unit_elem(P, "E12"), unit_elem(P, "E21")])
    with pytest.raises(ValueError):
        ac.stagnation_probe(P, open_span, trials=1, max_gen=1, seed=0)


def _m6_rank2_idempotent():
    # e = E11 + E22 under the flip gives four-dimensional corner components
    # whose skew parts are nonzero, so the brace-bracket and squares branches
    # of the theorem2 union actually contribute.
    P = ac.build_matrix_algebra(6, involution="flip")
    d = formats.presentation_to_dict(P)
    e = ["0"] * 36
    e[0] = "1"
    e[7] = "1"
    d["idempotents"]["e"] = e
    return formats.presentation_from_dict(d)


def test_theorem2_rank2_idempotent_m6():
    Q = _m6_rank2_idempotent()
    kh = ac.kh_split(Q, ac.z_grading(Q, Q.idempotents["e"]))
    assert kh.graded[2][0].rank == 1  # nonzero corner skew part
    c = ac.theorem2_certify(Q, seed=5)
    assert c.verdict == "pass"
    assert c.trace.final_rank == 15
    assert ac.lemma4_check(Q).verdict == "pass"
    assert ac.lemma6_check(Q).verdict == "pass"
    assert ac.lemma7_reduction_check(Q, trials=6, seed=5).verdict == "pass"


def test_theorem1_non_unital_presentation():
    # The same structure constants declared without a unit force the word
    # machinery through the unital hull; the verdict must not change.
    d = formats.presentation_to_dict(m2())
    d["unital"] = False
    del d["unit"]
    P = formats.presentation_from_dict(d)
    assert not P.unital
    cert = ac.theorem1_certify(P, seed=2)
    assert cert.verdict == "pass"
    assert cert.trace.final_rank == 3


def test_theorem_pipelines_over_prime_field():
    F7 = ac.PrimeField(7)
    c1 = ac.theorem1_certify(ac.build_matrix_algebra(3, field=F7))
    assert c1.verdict == "pass" and c1.trace.final_rank == 8
    c2 = ac.theorem2_certify(ac.build_matrix_algebra(3, field=F7, involution="flip"))
    assert c2.verdict == "pass" and c2.trace.final_rank == 3


def test_certificate_determinism():
    a = ac.theorem2_certify(m3("flip"), seed=9)
    b = ac.theorem2_certify(m3("flip"), seed=9)
    assert json.dumps(a.to_json_dict(), sort_keys=True) == json.dumps(
        b.to_json_dict(), sort_keys=True
    )
    c = ac.theorem2_certify(m3("flip"), seed=10)
    assert c.verdict == a.verdict


def test_identity_suite_random_instances():
    # Transfer identity {a,b,c} = [[a,b],c] on off-diagonal Peirce pairs.
    rng = random.Random(31)
    for P in (m2(), m3(), m4("flip")):
        e = P.idempotents["e"]
        pd = ac.peirce_decompose(P, e)
        for _ in range(25):
            def sample(comp):
                acc = P.zero()
                for row in comp.basis:
                    acc = P.add(
                        acc, P.scale(Fraction(rng.randint(-2, 2)), P.element(row))
                    )
                return acc
            a, c = sample(pd.eRf), sample(pd.eRf)
            b = sample(pd.fRe)
            assert P.equal(
                P.jordan_triple(a, b, c), P.commutator(P.commutator(a, b), c)
            )
