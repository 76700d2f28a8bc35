import math

import numpy as np
import pytest

from sirsupport.errors import CertificateUndefinedError, InvalidArgumentError
from sirsupport.sdp import (
    BACKENDS,
    SdpConfig,
    SdpSolution,
    check_rank1_certificate,
    default_lambda,
    project_spectraplex,
    sdp_sign_recover,
    sdp_solve,
)
from sirsupport.sir import SirMatrix


def _solution_from_z(z, rank1_gap=0.0):
    return SdpSolution(
        z=z,
        objective=0.0,
        iterations=1,
        converged=True,
        residual=0.0,
        rank1_gap=rank1_gap,
    )


class TestProjectSpectraplex:
    def test_feasible_point_is_fixed(self):
        z = np.zeros((3, 3))
        z[0, 0] = 1.0
        np.testing.assert_allclose(project_spectraplex(z), z, atol=1e-12)

    def test_scaled_identity_spreads_evenly(self):
        got = project_spectraplex(5.0 * np.eye(3))
        np.testing.assert_allclose(got, np.eye(3) / 3.0, atol=1e-12)

    def test_output_feasible_and_idempotent(self):
        rng = np.random.default_rng(7)
        g = rng.standard_normal((6, 6))
        m = (g + g.T) / 2.0
        z = project_spectraplex(m)
        assert np.array_equal(z, z.T)
        assert abs(np.trace(z) - 1.0) < 1e-10
        assert np.linalg.eigvalsh(z)[0] >= -1e-10
        np.testing.assert_allclose(project_spectraplex(z), z, atol=1e-10)

    def test_rejects_asymmetric(self):
        with pytest.raises(InvalidArgumentError):
            project_spectraplex(np.array([[1.0, 2.0], [0.0, 1.0]]))


class TestSdpConfig:
    def test_defaults(self):
        cfg = SdpConfig(lam=0.1)
        assert cfg.backend == "splitting" and cfg.step is None

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"lam": -0.1},
            {"lam": math.nan},
            {"lam": 0.1, "max_iter": 0},
            {"lam": 0.1, "tol": 0.0},
            {"lam": 0.1, "step": -1.0},
            {"lam": 0.1, "backend": "interior_point"},
        ],
    )
    def test_rejects_bad_settings(self, kwargs):
        with pytest.raises(InvalidArgumentError):
            SdpConfig(**kwargs)

    def test_backends_tuple(self):
        assert BACKENDS == ("splitting", "conditional_gradient")


class TestSdpSolutionValidation:
    def test_rejects_asymmetric_z(self):
        with pytest.raises(InvalidArgumentError):
            _solution_from_z(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_rejects_wrong_trace(self):
        with pytest.raises(InvalidArgumentError):
            _solution_from_z(np.eye(2))

    def test_rejects_indefinite(self):
        z = np.array([[1.5, 0.0], [0.0, -0.5]])
        with pytest.raises(InvalidArgumentError):
            _solution_from_z(z)

    def test_rejects_bad_rank1_gap(self):
        z = np.eye(2) / 2.0
        with pytest.raises(InvalidArgumentError):
            _solution_from_z(z, rank1_gap=1.5)


@pytest.mark.parametrize("backend", BACKENDS)
class TestSolveHandExamples:
    def test_no_penalty_picks_top_eigendirection(self, backend):
        a = np.diag([2.0, 1.0])
        sol = sdp_solve(a, SdpConfig(lam=0.0, backend=backend))
        assert sol.objective == pytest.approx(2.0, abs=1e-6)
        np.testing.assert_allclose(sol.z, np.diag([1.0, 0.0]), atol=1e-5)
        assert sol.rank1_gap < 1e-5

    def test_rank_one_all_ones(self, backend):
        a = np.ones((2, 2))
        sol = sdp_solve(a, SdpConfig(lam=0.0, backend=backend))
        assert sol.objective == pytest.approx(2.0, abs=1e-6)
        np.testing.assert_allclose(sol.z, np.full((2, 2), 0.5), atol=1e-5)

    def test_heavy_penalty_keeps_unit_trace(self, backend):
        # trace is pinned at 1, so the l1 term costs at least lam and the
        # best move is to spend it all on the largest diagonal entry
        a = np.diag([2.0, 1.0])
        sol = sdp_solve(a, SdpConfig(lam=100.0, backend=backend))
        assert sol.objective == pytest.approx(-98.0, abs=1e-5)
        np.testing.assert_allclose(sol.z, np.diag([1.0, 0.0]), atol=1e-4)

    def test_one_by_one(self, backend):
        sol = sdp_solve(np.array([[2.0]]), SdpConfig(lam=0.5, backend=backend))
        np.testing.assert_allclose(sol.z, [[1.0]], atol=1e-9)
        assert sol.objective == pytest.approx(1.5, abs=1e-9)

    def test_accepts_matrix_wrapper(self, backend):
        v = SirMatrix(v=np.diag([2.0, 1.0]), mode="raw", h=2)
        sol = sdp_solve(v, SdpConfig(lam=0.0, backend=backend))
        assert sol.objective == pytest.approx(2.0, abs=1e-6)


class TestSolveDiagnostics:
    def test_rejects_asymmetric_input(self):
        with pytest.raises(InvalidArgumentError):
            sdp_solve(np.array([[1.0, 1.0], [0.0, 1.0]]), SdpConfig(lam=0.1))

    def test_splitting_converges_with_small_residual(self):
        rng = np.random.default_rng(3)
        g = rng.standard_normal((5, 5))
        a = (g @ g.T) / 5.0
        sol = sdp_solve(a, SdpConfig(lam=0.1, tol=1e-9))
        assert sol.converged
        assert sol.residual <= 1e-9
        assert sol.iterations >= 1

    def test_zero_penalty_shortcut_is_exact(self):
        rng = np.random.default_rng(11)
        g = rng.standard_normal((6, 6))
        a = (g + g.T) / 2.0
        sol = sdp_solve(a, SdpConfig(lam=0.0, backend="conditional_gradient"))
        assert sol.objective == pytest.approx(np.linalg.eigvalsh(a)[-1], abs=1e-10)
        assert sol.converged

    def test_backends_agree_on_sample(self):
        rng = np.random.default_rng(99)
        for _ in range(3):
            g = rng.standard_normal((6, 6))
            a = (g @ g.T) / 6.0
            for lam in (0.0, 0.1):
                objs = {
                    b: sdp_solve(a, SdpConfig(lam=lam, backend=b)).objective
                    for b in BACKENDS
                }
                assert objs["splitting"] == pytest.approx(
                    objs["conditional_gradient"], abs=1e-5
                )


class TestSignRecover:
    def test_flat_vector_below_strict_threshold(self):
        z = np.full((5, 5), 0.2)
        sol = _solution_from_z(z)
        # entries are 1/sqrt(5) ~ 0.447: below 1/2 (s=1), above 1/(2 sqrt 5)
        assert sdp_sign_recover(sol, 1).s_hat == 0
        np.testing.assert_array_equal(sdp_sign_recover(sol, 5).signs, np.ones(5, dtype=np.int8))

    def test_orientation_fixes_global_flip(self):
        vec = np.array([-0.8, 0.6])
        sol = _solution_from_z(np.outer(vec, vec))
        np.testing.assert_array_equal(sdp_sign_recover(sol, 2).signs, [1, -1])

    def test_rejects_bad_arguments(self):
        sol = _solution_from_z(np.diag([1.0, 0.0]))
        with pytest.raises(InvalidArgumentError):
            sdp_sign_recover(sol.z, 1)
        with pytest.raises(InvalidArgumentError):
            sdp_sign_recover(sol, 0)


class TestRankOneCertificate:
    def test_certifies_dense_optimum(self):
        vec = np.array([0.8, 0.6])
        a = np.outer(vec, vec)
        sol = sdp_solve(a, SdpConfig(lam=0.05, tol=1e-11, max_iter=200000))
        assert check_rank1_certificate(a, 0.05, sol, tol=1e-4) is True

    def test_premise_fails_on_large_off_support_entries(self):
        # optimum concentrates on coordinate 0 but the remaining diagonal
        # exceeds lam, so the sufficient condition cannot fire
        a = np.diag([3.0, 1.0, 0.5])
        lam = 0.2
        sol = sdp_solve(a, SdpConfig(lam=lam, tol=1e-11, max_iter=200000))
        assert sol.rank1_gap < 1e-6
        assert check_rank1_certificate(a, lam, sol, tol=1e-4) is False

    def test_undefined_for_spread_solutions(self):
        sol = _solution_from_z(np.eye(2) / 2.0, rank1_gap=0.5)
        with pytest.raises(CertificateUndefinedError):
            check_rank1_certificate(np.eye(2), 0.1, sol, tol=1e-4)

    def test_rejects_bad_tol(self):
        sol = _solution_from_z(np.diag([1.0, 0.0]))
        for tol in (0.0, 1.0):
            with pytest.raises(InvalidArgumentError):
                check_rank1_certificate(np.eye(2), 0.1, sol, tol=tol)


class TestDefaultLambda:
    def test_half_sth_largest_diagonal(self):
        a = np.diag([4.0, 3.0, 2.0, 1.0])
        assert default_lambda(a, 1) == pytest.approx(2.0)
        assert default_lambda(a, 2) == pytest.approx(1.5)
        assert default_lambda(a, 4) == pytest.approx(0.5)

    def test_order_of_diagonal_does_not_matter(self):
        a = np.diag([1.0, 4.0, 2.0, 3.0])
        assert default_lambda(a, 2) == pytest.approx(1.5)

    def test_rejects_out_of_range_s(self):
        with pytest.raises(InvalidArgumentError):
            default_lambda(np.eye(3), 0)
        with pytest.raises(InvalidArgumentError):
            default_lambda(np.eye(3), 4)
