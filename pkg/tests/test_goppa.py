import itertools
import math
import random

import pytest

from cfslab.errors import BadParameters, CensusInfeasible, DimensionError
from cfslab.gf2m import GF2m, Poly
from cfslab.goppa import GoppaCode, decodable_census, goppa_keygen, patterson_decode
from cfslab.linalg import BitVector, kernel_basis, mat_vec, rank


@pytest.fixture(scope="module")
def code_t2():
    return goppa_keygen(4, 2, random.Random(101))


@pytest.fixture(scope="module")
def code_t3():
    return goppa_keygen(4, 3, random.Random(102))


def test_keygen_shapes(code_t2, code_t3):
    assert (code_t2.n, code_t2.n_minus_k) == (16, 8)
    assert (code_t3.n, code_t3.n_minus_k) == (16, 12)
    assert code_t2.h.rows == 8 and code_t2.h.cols == 16
    assert rank(code_t2.h) == 8
    assert rank(code_t3.h) == 12


def test_keygen_support_is_whole_field(code_t3):
    assert sorted(code_t3.support) == list(range(16))


def test_keygen_polynomial_is_monic_degree_t(code_t3):
    assert code_t3.g.degree == 3
    assert code_t3.g.coeffs[-1] == 1


def test_parity_check_annihilates_codewords(code_t2, code_t3):
    for code, k in ((code_t2, 8), (code_t3, 4)):
        basis = kernel_basis(code.h)
        assert len(basis) == k
        for u in basis:
            assert mat_vec(code.h, u).is_zero()


def test_keygen_rejects_bad_parameters():
    rng = random.Random(1)
    with pytest.raises(BadParameters):
        goppa_keygen(4, 1, rng)
    with pytest.raises(BadParameters):
        goppa_keygen(4, 4, rng)  # m*t = 16 = 2^m leaves no dimension
    with pytest.raises(BadParameters):
        goppa_keygen(1, 2, rng)


def test_build_rejects_bad_support():
    field = GF2m(4)
    g = Poly(field, (1, 1, 1))  # x^2 + x + 1 has roots in GF(16): order-3 elements
    with pytest.raises(BadParameters):
        GoppaCode.build(field, g, [0, 0, 1])  # duplicate support entries
    root = next(a for a in range(16) if g.eval(a) == 0)
    with pytest.raises(BadParameters):
        GoppaCode.build(field, g, [root, 1, 0])


def test_decode_zero_syndrome(code_t3):
    e = patterson_decode(code_t3, BitVector.zeros(12))
    assert e == BitVector.zeros(16)


def test_decode_every_single_error(code_t2):
    for i in range(16):
        e = BitVector.from_indices(16, [i])
        assert patterson_decode(code_t2, mat_vec(code_t2.h, e)) == e


def test_decode_exhaustive_weight_up_to_t(code_t2, code_t3):
    for code in (code_t2, code_t3):
        for wt in range(code.t + 1):
            for pos in itertools.combinations(range(code.n), wt):
                e = BitVector.from_indices(code.n, pos)
                assert patterson_decode(code, mat_vec(code.h, e)) == e


@pytest.mark.parametrize("m,t", [(4, 2), (4, 3), (5, 2), (5, 3)])
def test_decode_random_round_trips(m, t):
    rng = random.Random(103 + m + t)
    code = goppa_keygen(m, t, rng)
    n = code.n
    for _ in range(1000):
        wt = rng.randrange(0, t + 1)
        e = BitVector.from_indices(n, rng.sample(range(n), wt))
        assert patterson_decode(code, mat_vec(code.h, e)) == e


def test_decode_never_returns_overweight(code_t3):
    rng = random.Random(104)
    for _ in range(500):
        s = BitVector(12, rng.getrandbits(12))
        e = patterson_decode(code_t3, s)
        if e is not None:
            assert e.weight <= 3
            assert mat_vec(code_t3.h, e) == s


def test_decode_syndrome_length_checked(code_t3):
    with pytest.raises(DimensionError):
        patterson_decode(code_t3, BitVector.zeros(8))


def test_census_t2_exact(code_t2):
    report = decodable_census(code_t2)
    assert report.decodable == 137
    assert report.total == 256
    assert report.closed_form == 137 == sum(math.comb(16, i) for i in range(3))
    assert report.ratio == pytest.approx(0.53515625)
    assert report.t_factorial_approx == pytest.approx(0.5)


def test_census_t3_exact(code_t3):
    report = decodable_census(code_t3)
    assert report.decodable == report.closed_form == 697
    assert report.total == 4096
    assert report.t_factorial_approx == pytest.approx(1 / 6)


def test_census_rejects_small_t(code_t2):
    # hand-build a t=1 code object; the census refuses the degenerate bound
    field = GF2m(4)
    g = Poly(field, (2, 1))  # x + alpha
    support = [a for a in range(16) if g.eval(a) != 0]
    tiny = GoppaCode.build(field, g, support)
    with pytest.raises(BadParameters):
        decodable_census(tiny)


def test_census_rejects_infeasible_size():
    code = goppa_keygen(6, 5, random.Random(105))  # n-k = 30 > 24
    with pytest.raises(CensusInfeasible):
        decodable_census(code)


def test_census_record_fields(code_t2):
    d = decodable_census(code_t2).as_dict()
    assert set(d) == {
        "m", "t", "n", "decodable", "total", "ratio", "closed_form", "t_factorial_approx",
    }
