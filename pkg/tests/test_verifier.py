import itertools
import json
import math
import random

import pytest

from streamcode import StreamParams, build_streaming_code, construct_base, make_field
from streamcode.basecode import BaseCode
from streamcode.embedding import ParameterError, PlacementSet, f_S, placement_set_de, placement_set_sde, reach
from streamcode.linalg import MatrixGF, nullspace
from streamcode.verifier import (
    Regime,
    UnsupportedRegime,
    Violation,
    VerifyReport,
    check_burst,
    check_random,
    classify_regime,
    field_bound,
    verify_streaming,
)

from corrupted import edit_h, supported_triples

F8 = make_field(8)


def test_classify_examples():
    assert classify_regime(2, 6, 10) is Regime.SDE_GCD
    assert classify_regime(2, 4, 6) is Regime.DE_DIV
    assert classify_regime(3, 4, 5) is Regime.UNSUPPORTED
    assert classify_regime(2, 5, 7) is Regime.DE_MOD


def test_classify_rejects_bad_ordering():
    with pytest.raises(ParameterError):
        classify_regime(3, 2, 5)


def test_classify_is_first_applicable_predicate():
    for tau in range(1, 13):
        for b in range(1, tau + 1):
            for a in range(1, b + 1):
                sde = math.gcd(b, tau + 1 - a) >= a
                de = tau + 1 - a >= b
                expect = (Regime.SDE_GCD if sde else Regime.DE_DIV if de and b % a == 0
                          else Regime.DE_MOD if de and b % a == a - 1 else Regime.UNSUPPORTED)
                assert classify_regime(a, b, tau) is expect
                if (tau + 1 - a) % b == 0:
                    assert expect is Regime.SDE_GCD


def test_build_examples():
    sc = build_streaming_code(2, 6, 10)
    assert (sc.code.n, sc.code.k, sc.field_size) == (10, 6, 8) and sc.placement == placement_set_sde(StreamParams(2, 6, 10))
    sc = build_streaming_code(2, 4, 7)
    assert (sc.code.n, sc.code.k, sc.regime) == (10, 6, Regime.SDE_GCD)    # gcd(4, 6) = 2: SDE with g = 0
    assert sc.placement == placement_set_de(10)
    sc = build_streaming_code(2, 5, 7)
    assert (sc.code.n, sc.code.k, sc.regime) == (11, 6, Regime.DE_MOD)


def test_build_unsupported():
    with pytest.raises(UnsupportedRegime, match="unsupported regime"):
        build_streaming_code(3, 4, 5)


def test_force_regime():
    sc = build_streaming_code(2, 4, 7, force_regime="DE_DIV")
    assert sc.regime is Regime.DE_DIV and sc.code.n == 10
    with pytest.raises(UnsupportedRegime):
        build_streaming_code(2, 6, 10, force_regime=Regime.DE_MOD)


def test_field_size_at_most_twice_bound():
    for a, b, tau in supported_triples(10):
        sc = build_streaming_code(a, b, tau)
        bound = field_bound(sc.regime, StreamParams(a, b, tau))
        assert bound <= sc.field_size <= max(2 * bound, 4)


def test_verify_2_6_10():
    sc = build_streaming_code(2, 6, 10)
    rep = verify_streaming(sc.code, sc.placement, StreamParams(2, 6, 10), exhaustive_burst=True)
    assert rep.passed and rep.checked > 0


def test_verify_de_examples():
    c248 = construct_base(2, 4, 8, F8)
    assert verify_streaming(c248, placement_set_de(10), StreamParams(2, 4, 7)).passed
    sc = build_streaming_code(2, 5, 7)
    assert verify_streaming(sc.code, sc.placement, StreamParams(2, 5, 7)).passed


def test_c248_burst_reduces_to_h_minors():
    # for i in [2:9] the burst condition on SDE(2,6,10) is invertibility of 4 consecutive H columns
    from test_linalg import leibniz_det
    c248 = construct_base(2, 4, 8, F8)
    for i in range(2, 7):
        assert leibniz_det(F8, c248.H.sub(0, 3, i, i + 3).tolist()) != 0
    ps = placement_set_sde(StreamParams(2, 6, 10))
    assert check_burst(c248, ps, 6, 10).passed


def test_mds_de_random_passes():
    sc = build_streaming_code(1, 1, 4)          # single parity MDS code with DE
    assert check_random(sc.code, sc.placement, 1, 4).passed


def test_all_ones_cauchy_fails_with_witness():
    c248 = construct_base(2, 4, 8, F8)
    H = c248.H.tolist()
    for r in range(4):
        for c in range(4, 8):
            H[r][c] = 1
    Hm = MatrixGF.from_rows(F8, H)
    code = BaseCode(10, 6, F8, Hm, nullspace(Hm))       # last block is singular: no systematic form
    assert (code.G @ code.H.T).is_zero()
    rep = check_random(code, placement_set_sde(StreamParams(2, 6, 10)), 2, 10)
    assert not rep.passed
    v = rep.violations[0]
    assert v.kind == "random" and 1 <= len(v.erased) <= 2 and v.i in v.erased


def test_wrong_parameters_fail():
    sc = build_streaming_code(2, 6, 10)
    rep = verify_streaming(sc.code, sc.placement, StreamParams(3, 6, 10))
    assert not rep.passed and any(v.kind == "random" for v in rep.violations)


def test_shortened_span_fails_burst():
    c248 = construct_base(2, 4, 8, F8)
    ps = PlacementSet((0, 1, 3, 4, 6, 7, 9, 10, 11, 12), 13)
    rep = verify_streaming(c248, ps, StreamParams(2, 6, 10))
    assert not rep.passed
    burst = [v for v in rep.violations if v.kind == "burst"]
    assert burst and all(v.offsets for v in burst)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        verify_streaming(construct_base(2, 4, 8, F8), placement_set_de(9), StreamParams(2, 4, 7))


def test_report_merge_and_json():
    v1, v2 = Violation("random", 3, (3, 4)), Violation("burst", 1, (1, 2), (1, 2))
    rep = VerifyReport([v1], 5).merge(VerifyReport([v2, v1], 7))
    assert rep.violations == sorted([v1, v2]) and rep.checked == 12 and not rep.passed
    obj = json.loads(json.dumps(rep.to_json()))
    assert obj["pass"] is False and {"kind": "burst", "i": 1, "erased": [1, 2], "offsets": [1, 2]} in obj["violations"]
    assert VerifyReport().passed


@pytest.mark.parametrize("tau", range(1, 9))
def test_maximal_burst_agrees_with_exhaustive(tau):
    for a, b, t in supported_triples(tau):
        if t != tau:
            continue
        sc = build_streaming_code(a, b, tau)
        ex = check_burst(sc.code, sc.placement, b, tau, exhaustive=True)
        mx = check_burst(sc.code, sc.placement, b, tau, exhaustive=False)
        assert ex.passed == mx.passed


def test_maximal_burst_agrees_on_corrupted_codes():
    from corrupted import random_corruptions
    for fx in random_corruptions(60, tau_max=6, seed=3):
        ex = check_burst(fx.code, fx.placement, fx.params.b, fx.params.tau, exhaustive=True)
        mx = check_burst(fx.code, fx.placement, fx.params.b, fx.params.tau, exhaustive=False)
        assert ex.passed == mx.passed, fx.name


# ---- brute-force oracle: enumerate every codeword -------------------------------------------


def all_codewords(code):
    fs = code.field
    words = []
    for info in itertools.product(range(fs.q), repeat=code.k):
        words.append(tuple(code.encode(list(info))))
    return words


def brute_verdict(code, ps, p):
    """c_i recoverable iff no codeword is zero on the visible non-erased coordinates but nonzero at i."""
    words = all_codewords(code)

    def ok(i, erased):
        r = reach(ps, i, p.tau)
        visible = [j for j in range(r + 1) if j not in erased]
        return not any(w[i] and not any(w[j] for j in visible) for w in words)

    for i in range(code.n):
        r = reach(ps, i, p.tau)
        for size in range(p.a):
            for rest in itertools.combinations(range(i + 1, r + 1), size):
                if not ok(i, {i, *rest}):
                    return False
        lo = ps.S[i]
        hi = min(lo + p.b - 1, ps.N - 1)
        if not ok(i, {f_S(ps, j) for j in range(lo, hi + 1)}):
            return False
    return True


def small_cases():
    out = []
    for a, b, tau in supported_triples(8):
        sc = build_streaming_code(a, b, tau)
        if sc.field_size ** sc.code.k <= 4096:
            out.append((a, b, tau))
    return out


def test_verifier_matches_codeword_enumeration():
    rng = random.Random(11)
    cases = small_cases()
    assert len(cases) >= 8
    fails = 0
    for a, b, tau in cases:
        sc = build_streaming_code(a, b, tau)
        p = StreamParams(a, b, tau)
        assert brute_verdict(sc.code, sc.placement, p)
        assert verify_streaming(sc.code, sc.placement, p).passed
        for _ in range(4):
            r, c = rng.randrange(sc.code.H.rows), rng.randrange(sc.code.n)
            val = rng.randrange(sc.field_size)

            def fn(H, r=r, c=c, val=val):
                H[r][c] = val
            try:
                code = edit_h(sc.code, fn)
            except ValueError:
                continue
            v = verify_streaming(code, sc.placement, p).passed
            assert v == brute_verdict(code, sc.placement, p), (a, b, tau, r, c, val)
            fails += not v
    assert fails > 0
