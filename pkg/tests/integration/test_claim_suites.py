"""Claim suites on the desk-scale presets

Quick runs use a handful of trials per claim; the full acceptance runs
(default trial counts, every claim) are marked slow.
"""

import pytest

from src.dyadic import ONE, pow2
from src.errors import MalformedInputError, PrefixTooShortError
from src.schedule import Schedule, canonical, small_preset
from src.verify import CLAIMS, hyp0_witness, run_suite, with_prefix_retry
from src.verify.suites import build_cases

pytestmark = pytest.mark.integration


@pytest.fixture(scope="module")
def small2():
    return small_preset("small-2", 5)


def _single(claim, s, **kwargs):
    results = run_suite(claim, s, seed=11, **kwargs)
    assert len(results) == 1
    result = results[0]
    assert result.ok, result.summary()
    return result


class TestQuickSuites:
    """Every claim with few trials"""

    @pytest.mark.parametrize("claim,trials", [
        ("norm", None),
        ("fhc0", 3),
        ("fhc1", 3),
        ("fhc2", 2),
        ("cool", 3),
        ("density", 10),
        ("oracle", 1),
    ])
    def test_claim_passes(self, small2, claim, trials):
        """Suite passes on SMALL-2"""
        _single(claim, small2, trials=trials)

    def test_periodicity(self, small2):
        """Every e_k below b_3 plus the wrap identities"""
        result = _single("periodicity", small2)
        assert len(result.cases) == 352 + 4

    def test_reiterate(self, small2):
        """The single reiterative case extends the prefix to block 7"""
        result = _single("reiterate", small2)
        assert [c.key for c in result.cases] == [("e_0", 3)]

    def test_canonical_periodicity(self):
        """Block 0 in full plus 20 sampled indices of block 1"""
        result = _single("periodicity", canonical(3))
        assert len(result.cases) == 64 + 20 + 4

    def test_golden_cases_included(self, small2):
        """fhc0 and fhc1 carry their fixed basis vectors on SMALL-2"""
        cases = build_cases("fhc0", small2, seed=1, trials=0)
        assert [(c[1], c[3][1].render()) for c in cases] == [((1, -1), "e_32")]
        cases = build_cases("fhc1", small2, seed=1, trials=0)
        assert cases[0][3][1].render() == "e_95"


class TestSuiteMechanics:
    """Determinism, workers, errors"""

    def test_same_seed_same_cases(self, small2):
        """Cases depend only on the seed"""
        a = build_cases("cool", small2, seed=5, trials=4)
        b = build_cases("cool", small2, seed=5, trials=4)
        c = build_cases("cool", small2, seed=6, trials=4)
        assert [x[3] for x in a] == [x[3] for x in b]
        assert [x[3] for x in a] != [x[3] for x in c]

    def test_workers_match_serial(self, small2):
        """A process pool gives the same sorted results"""
        serial = run_suite("density", small2, seed=3, trials=6, workers=1)[0]
        pooled = run_suite("density", small2, seed=3, trials=6, workers=2)[0]
        assert serial.cases == pooled.cases

    def test_transit_pair_sizes(self, small2):
        """Every third transit pair differs in exactly three coordinates, from y = 0"""
        cases = build_cases("transit", small2, seed=2, trials=20)
        wide = [c[3] for c in cases if len((c[3][1] - c[3][0]).support) == 3]
        assert len(wide) == 6
        assert all(y.is_zero() and max(x.support) < 96 for y, x, _ in wide)

    def test_unknown_claim(self, small2):
        """Claims are checked"""
        with pytest.raises(MalformedInputError):
            run_suite("nope", small2)

    def test_failure_is_reported(self, small2):
        """A suite case failing its runner shows up in failures"""
        custom = Schedule(small2.phi, small2.delta, small2.tau, small2.b, small2.multipliers)
        result = run_suite("reiterate", custom, seed=1)[0]
        assert not result.ok
        assert "PrefixTooShortError" in result.failures[0].detail
        assert "FAILED" in result.summary()


class TestPrefixRetry:
    """Preset schedules grow on demand"""

    def test_extends_preset(self, small2):
        """eps = 2^-60 needs block 7"""
        report = with_prefix_retry(lambda s: hyp0_witness(pow2(-60), 0, 1, 0, ONE, s), small2)
        assert report.ok
        assert report["t"] == 7

    def test_custom_schedule_not_extended(self, small2):
        """File schedules keep their prefix"""
        custom = Schedule(small2.phi, small2.delta, small2.tau, small2.b, small2.multipliers)
        with pytest.raises(PrefixTooShortError):
            with_prefix_retry(lambda s: hyp0_witness(pow2(-60), 0, 1, 0, ONE, s), custom)


@pytest.mark.slow
class TestAcceptance:
    """Default trial counts"""

    def test_hyp0_grid(self, small2):
        """Witness grid over eps, k, N, M and x_k"""
        result = _single("hyp0", small2)
        assert len(result.cases) == 3 * 3 * (1 + 2 + 64) * 2

    def test_transit(self, small2):
        """Twenty random pairs below b_2, six of them differing in three coordinates"""
        result = _single("transit", small2)
        assert len(result.cases) == 20

    @pytest.mark.parametrize("claim", [c for c in CLAIMS if c not in ("hyp0", "transit")])
    def test_default_trials(self, small2, claim):
        """Each remaining claim at its default size"""
        _single(claim, small2)

    def test_small41_sup_free_claims(self):
        """SMALL-41 passes the lower-block suites too"""
        s = small_preset("small-41", 4)
        for claim in ("fhc0", "fhc1", "fhc2"):
            _single(claim, s, trials=10)
