import itertools
import random
from fractions import Fraction as F

import pytest

from dhym.errors import ModelError, ModelParseError
from dhym.variety import (
    CohomClass,
    build_builtin,
    builtin_names,
    complex_wedge_integral,
    packaged_model,
    parse_model,
    restrict_intersect,
    serialize_model,
    wedge_mix_integral,
)
from oracles import brute_integrate


def test_builtin_names():
    assert set(builtin_names()) == {"cp1", "cp2", "cp3", "blp_cp2", "p1xp1"}
    with pytest.raises(ModelError):
        build_builtin("cp9")


def test_blowup_tensor():
    m = build_builtin("blp_cp2")
    H = m.cohom_class("1,0")
    E = m.cohom_class("0,1")
    x = m.ambient
    assert restrict_intersect(x, [H, H]) == 1
    assert restrict_intersect(x, [E, E]) == -1
    assert restrict_intersect(x, [H, E]) == 0
    assert [v.name for v in m.subvarieties] == ["E", "H-E", "H", "X"]


def test_cp_normalizations():
    assert restrict_intersect(build_builtin("cp3").ambient, [CohomClass([1])] * 3) == 1
    assert restrict_intersect(build_builtin("cp1").ambient, [CohomClass([1])]) == 1
    m = build_builtin("cp3")
    assert {v.name: v.dim for v in m.subvarieties} == {"line": 1, "plane": 2, "X": 3}


def test_known_intersections():
    m = build_builtin("blp_cp2")
    alpha = m.cohom_class("6,1")
    omega = m.cohom_class("2,-1")
    assert restrict_intersect(m.ambient, [alpha, alpha]) == 35
    assert restrict_intersect(m.subvariety("E"), [omega]) == 1
    assert wedge_mix_integral(m.ambient, alpha, omega, 1) == 13
    assert wedge_mix_integral(build_builtin("cp3").ambient, CohomClass([2]), CohomClass([1]), 2) == 4
    assert wedge_mix_integral(m.ambient, alpha, omega, 0) == 3  # Kahler volume


def test_wedge_mix_range_errors():
    m = build_builtin("cp2")
    with pytest.raises(ModelError):
        wedge_mix_integral(m.ambient, m.omega, m.omega, 3)
    with pytest.raises(ModelError):
        restrict_intersect(m.ambient, [m.omega])


def test_multilinearity_and_symmetry():
    rng = random.Random(3)
    models = [build_builtin(n) for n in ("blp_cp2", "p1xp1")] + [packaged_model("blp_cp3")]
    for m in models:
        b = len(m.basis)
        rand_class = lambda: CohomClass(
            [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(b)]
        )
        for v in m.subvarieties:
            p = v.dim
            classes = [rand_class() for _ in range(p)]
            # symmetry under argument permutation
            base = v.integrate(classes)
            for perm in itertools.permutations(range(p)):
                assert v.integrate([classes[i] for i in perm]) == base
            # multilinearity in a random slot
            a, c = F(rng.randint(-5, 5), rng.randint(1, 4)), F(rng.randint(-5, 5), rng.randint(1, 4))
            P, Q = rand_class(), rand_class()
            slot = rng.randrange(p)
            mixed = classes.copy()
            mixed[slot] = P.scale(a) + Q.scale(c)
            left = classes.copy()
            left[slot] = P
            right = classes.copy()
            right[slot] = Q
            assert v.integrate(mixed) == a * v.integrate(left) + c * v.integrate(right)
            # dense-tensor contraction oracle
            assert brute_integrate(v, classes) == base


def test_zero_class_kills_integral():
    m = build_builtin("blp_cp2")
    z = CohomClass.zero(2)
    for v in m.subvarieties:
        assert v.integrate([z] * v.dim) == 0


def test_complex_wedge_integral_matches_binomial():
    m = build_builtin("blp_cp2")
    alpha = m.cohom_class("6,1")
    omega = m.cohom_class("2,-1")
    re, im = complex_wedge_integral(m.ambient, alpha, omega, 2)
    assert (re, im) == (32, 26)
    # (a + ib)^1 wedge extra
    re, im = complex_wedge_integral(m.ambient, alpha, omega, 1, [omega])
    assert re == 13 and im == 3


def test_roundtrip_serialize_parse():
    for name in ("blp_cp2", "p1xp1", "cp3"):
        m = build_builtin(name)
        again = parse_model(serialize_model(m))
        assert again == m
    custom = packaged_model("cp1xcp2")
    assert parse_model(serialize_model(custom)) == custom


def test_packaged_blp_cp2_matches_builtin():
    shipped = packaged_model("blp_cp2")
    builtin = build_builtin("blp_cp2")
    assert shipped == builtin


def test_parse_rejects_conflicting_duplicates():
    text = """
name = "bad"
dim = 2
basis = ["H", "E"]
[tensor]
"H.H" = "1"
"E.E" = "-1"
"H.E" = "0"
"E.H" = "1"
[omega]
H = "2"
E = "-1"
"""
    with pytest.raises(ModelParseError, match="conflicting"):
        parse_model(text)


def test_parse_accepts_redundant_consistent_entries():
    text = """
name = "ok"
dim = 2
basis = ["H", "E"]
[tensor]
"H.H" = "1"
"E.E" = "-1"
"H.E" = "0"
"E.H" = "0"
[omega]
H = "2"
E = "-1"
"""
    m = parse_model(text)
    assert m.tensor == {(0, 0): F(1), (1, 1): F(-1)}


def test_parse_rejects_nonpositive_omega_volume():
    text = """
name = "bad"
dim = 1
basis = ["H"]
[tensor]
"H" = "1"
[omega]
H = "-1"
"""
    with pytest.raises(ModelParseError, match="must be > 0"):
        parse_model(text)


def test_parse_rejects_bad_rational():
    text = """
name = "bad"
dim = 1
basis = ["H"]
[tensor]
"H" = "1.5"
[omega]
H = "1"
"""
    with pytest.raises(ModelParseError, match="rational"):
        parse_model(text)


def test_parse_custom_threefold():
    text = """
name = "custom"
dim = 3
basis = ["A", "B"]
[tensor]
"A.A.A" = "2"
"A.A.B" = "1"
"A.B.B" = "1/2"
"B.B.B" = "3"
"A.B.A" = "1"
[omega]
A = "1"
B = "1"
"""
    m = parse_model(text)
    assert m.dim == 3 and len(m.tensor) == 4
    assert parse_model(serialize_model(m)) == m


def test_ambient_is_implicit_in_files():
    m = build_builtin("blp_cp2")
    text = serialize_model(m)
    assert '"X"' not in text  # ambient reconstructed, not serialized
    bad = text + '\n[[subvarieties]]\nname = "X2"\ndim = 2\n[subvarieties.functional]\n"H.H" = "1"\n'
    with pytest.raises(ModelParseError, match="implicit"):
        parse_model(bad)


def test_immutability():
    m = build_builtin("cp2")
    with pytest.raises(AttributeError):
        m.dim = 5
    with pytest.raises(AttributeError):
        m.omega = CohomClass([2])


def test_cohom_class_parsing():
    c = CohomClass.parse("6,1")
    assert c.coeffs == (F(6), F(1))
    c = CohomClass.parse("-1/2, 3/4")
    assert c.coeffs == (F(-1, 2), F(3, 4))
    m = build_builtin("blp_cp2")
    with pytest.raises(ModelError):
        m.cohom_class("1")


def test_family_note_only_on_projective_space():
    assert build_builtin("cp3").family_note is not None
    assert build_builtin("cp1").family_note is not None
    assert build_builtin("blp_cp2").family_note is None
    assert packaged_model("blp_cp3").family_note is None
