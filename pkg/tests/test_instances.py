"""Instance builders and the algebra file format."""

import json

import pytest

import algcert as ac
from algcert import formats
from algcert.certificates import commutator_span
from algcert.errors import FormatError
from algcert.instances import InstanceSpec, build_instance, x_component_span
from helpers import elem, m2, m3, unit_elem


def test_matrix_builder_shapes():
    P = m2("transpose")
    assert P.dim == 4
    assert P.basis_labels == ("E11", "E12", "E21", "E22")
    assert ac.kh_split(P).K.rank == 1
    rep = ac.validate_presentation(P)
    assert rep.ok


def test_flip_involution_indices():
    P = m3("flip")
    # E11* = E33 by the anti-diagonal reflection, so ee* = 0.
    e = P.idempotents["e"]
    estar = P.involve(e)
    assert estar == unit_elem(P, "E33")
    assert P.is_zero(P.mul(e, estar))


def test_symplectic_complementary_idempotents():
    P = m2("symplectic")
    e = P.idempotents["e"]
    estar = P.involve(e)
    assert estar == unit_elem(P, "E22")
    assert P.equal(P.add(e, estar), P.unit)  # s = 0


def test_matrix_builder_rejections():
    with pytest.raises(FormatError):
        ac.build_matrix_algebra(1)
    with pytest.raises(FormatError):
        ac.build_matrix_algebra(3, involution="symplectic")
    with pytest.raises(FormatError):
        ac.build_matrix_algebra(2, involution="hermitian")


def test_example1_shapes():
    assert ac.build_example1(1).dim == 3
    P = ac.build_example1(8)
    assert P.dim == 24
    assert ac.validate_presentation(P).ok
    assert not P.has_involution
    span = commutator_span(P)
    assert span.rank == 8
    for lab in P.basis_labels:
        if lab.endswith("E12"):
            assert span.contains(unit_elem(P, lab).coords)


def test_example1_commutator_rank_is_truncation():
    for D in range(1, 6):
        P = ac.build_example1(D)
        span = commutator_span(P)
        assert span.rank == D
        rows = [P.element(r) for r in span.basis]
        for u in rows:
            for v in rows:
                assert P.is_zero(P.commutator(u, v))


def test_example2_shapes():
    P = ac.build_example2(1)
    assert P.dim == 8
    assert ac.validate_presentation(P).ok
    kh = ac.kh_split(P)
    # Solving a* = -a coordinatewise: diagonal pairs (a, -a^phi), x-offdiag.
    assert kh.K.rank == 4
    for combo in (
        {"E11": 1, "E22": -1},
        {"x*E11": 1, "x*E22": 1},
        {"x*E12": 1},
        {"x*E21": 1},
    ):
        assert kh.K.contains(elem(P, combo).coords)


def test_example2_K_commutators_in_x_component():
    for D in (1, 2, 8):
        P = ac.build_example2(D)
        kh = ac.kh_split(P)
        xspan = x_component_span(P)
        rows = [P.element(r) for r in kh.K.basis]
        span = ac.SpanBuilder(P.field, P.dim)
        for i, u in enumerate(rows):
            for v in rows[i + 1:]:
                span.add(P.commutator(u, v).coords)
        kk = span.subspace()
        assert xspan.contains_subspace(kk)
        # and the product of any two x-multiples vanishes
        xrows = [P.element(r) for r in xspan.basis]
        for u in xrows:
            for v in xrows:
                assert P.is_zero(P.mul(u, v))


def test_build_instance_dispatch():
    assert build_instance(InstanceSpec("matrix_n", n=2)).dim == 4
    assert build_instance(InstanceSpec("flip_matrix_n", n=3)).has_involution
    assert build_instance(InstanceSpec("symplectic_m2")).dim == 4
    assert build_instance(InstanceSpec("triangular_example1", truncation=2)).dim == 6
    assert build_instance(InstanceSpec("m2_example2", truncation=2)).dim == 16
    with pytest.raises(FormatError):
        build_instance(InstanceSpec("custom_file"))


def test_roundtrip_byte_identical():
    for P in (m2("transpose"), m3("flip"), ac.build_example1(3), ac.build_example2(2)):
        text = formats.dumps_presentation(P)
        Q = formats.loads_presentation(text)
        assert formats.dumps_presentation(Q) == text
        assert Q.dim == P.dim and Q.basis_labels == P.basis_labels


def test_unknown_field_rejected():
    d = formats.presentation_to_dict(m2())
    d["extra"] = 1
    with pytest.raises(FormatError) as err:
        formats.presentation_from_dict(d)
    assert "extra" in str(err.value)


def test_missing_field_rejected():
    d = formats.presentation_to_dict(m2())
    del d["mul"]
    with pytest.raises(FormatError):
        formats.presentation_from_dict(d)


def test_bad_indices_rejected():
    d = formats.presentation_to_dict(m2())
    d["mul"][0][0] = 9
    with pytest.raises(FormatError) as err:
        formats.presentation_from_dict(d)
    assert "$.mul[0]" in str(err.value)


def test_bad_scalar_rejected():
    d = formats.presentation_to_dict(m2())
    d["mul"][0][3] = "0.5"
    with pytest.raises(FormatError):
        formats.presentation_from_dict(d)


def test_unit_required_iff_unital():
    d = formats.presentation_to_dict(m2())
    del d["unit"]
    with pytest.raises(FormatError):
        formats.presentation_from_dict(d)
    d2 = formats.presentation_to_dict(m2())
    d2["unital"] = False
    with pytest.raises(FormatError):
        formats.presentation_from_dict(d2)


def test_vector_length_rejected():
    d = formats.presentation_to_dict(m2())
    d["idempotents"]["e"] = ["1", "0"]
    with pytest.raises(FormatError) as err:
        formats.presentation_from_dict(d)
    assert "$.idempotents.e" in str(err.value)


def test_invalid_json_rejected():
    with pytest.raises(FormatError):
        formats.loads_presentation("{not json")


def test_prime_field_roundtrip():
    F7 = ac.PrimeField(7)
    P = ac.build_matrix_algebra(2, field=F7, involution="transpose")
    text = formats.dumps_presentation(P)
    Q = formats.loads_presentation(text)
    assert json.loads(text)["field"] == "Fp:7"
    assert Q.field.p == 7
    assert ac.validate_presentation(Q).ok
    assert ac.kh_split(Q).K.rank == 1
