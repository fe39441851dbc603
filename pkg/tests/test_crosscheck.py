import mpmath as mp
import pytest

from paramodular.crosscheck import (
    gauss_numeric,
    h_tilde_bruteforce,
    l_value,
    numeric_coefficient,
    relative_error,
)
from paramodular.dirichlet import DirichletCharacter
from paramodular.eisenstein import HalfIntMatrix, fourier_coefficient, h_tilde
from paramodular.gauss import gauss_sum

LEG5 = DirichletCharacter.from_label(5, 2)
ONE = DirichletCharacter.principal(1)

SAMPLE = [
    (ONE, (1, 1, 1)),
    (ONE, (2, 1, 3)),
    (LEG5, (1, 5, 25)),
    (LEG5, (2, 0, 25)),
    (LEG5, (1, 0, 25)),
    (LEG5, (3, 10, 50)),
    (LEG5, (4, 25, 100)),
    (LEG5, (1, 10, 25)),
    (DirichletCharacter.from_label(13, 6), (1, 13, 169)),
]


@pytest.mark.parametrize("eta,T", SAMPLE, ids=lambda x: str(getattr(x, "label", x)))
@pytest.mark.parametrize("k", [4, 6])
def test_dual_path_hurwitz(eta, T, k):
    H = HalfIntMatrix(*T)
    exact = fourier_coefficient(k, eta, H, certify_fields=False)
    with mp.workdps(40):
        approx, _ = numeric_coefficient(k, eta, H, dps=40)
        assert relative_error(exact.value.embed(40), approx) < 1e-25 or abs(approx) < mp.mpf(10) ** -30


def test_some_k_used_oracle():
    with mp.workdps(40):
        _, by_oracle = numeric_coefficient(4, LEG5, HalfIntMatrix(1, 5, 25))
    assert by_oracle


def test_series_method_close():
    H = HalfIntMatrix(1, 5, 25)
    exact = fourier_coefficient(4, LEG5, H, certify_fields=False).value.embed(30)
    approx, _ = numeric_coefficient(4, LEG5, H, dps=30, method="series")
    assert relative_error(exact, approx) < 1e-8


def test_l_value_guards():
    with pytest.raises(ValueError):
        l_value(1, lambda x: mp.mpc(1), 1)
    with pytest.raises(ValueError):
        l_value(2, lambda x: mp.mpc(1), 1, method="nope")
    with mp.workdps(30):
        assert abs(l_value(2, lambda x: mp.mpc(1), 1) - mp.pi**2 / 6) < mp.mpf(10) ** -25
    assert abs(l_value(2, lambda x: mp.mpc(1), 1, method="series") - mp.pi**2 / 6) < 1e-10


def test_numeric_helpers_match_exact():
    for eta in (LEG5, DirichletCharacter.from_label(8, 1), DirichletCharacter.from_label(7, 1)):
        with mp.workdps(30):
            assert abs(gauss_numeric(eta) - gauss_sum(eta).embed(30)) < mp.mpf(10) ** -25
            for e, f in [(1, 6), (2, 12), (3, 9)]:
                assert abs(h_tilde_bruteforce(-4, 4, eta, e, f) - h_tilde(-4, 4, eta, e, f).embed(30)) < mp.mpf(10) ** -20


def test_relative_error_zero():
    assert relative_error(0, 0) == 0.0
