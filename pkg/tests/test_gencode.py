"""Table codes: the quadratic 26-user builtin, verification, composition.

Two oracles anchor this file.  The encoder formulas are transcribed a
second time below as bare term lists and evaluated independently against
the shipped encoder (double-entry bookkeeping).  Confusability is
re-decided from its definition by quadratic pair enumeration on
instances small enough to afford it.
"""

import itertools

import numpy as np
import pytest

from indexcode import (
    AlphabetMismatch,
    BudgetExceeded,
    GENERAL_CATALOG_NAMES,
    GeneralCode,
    LengthMismatch,
    LinearCode,
    Matrix,
    UnknownCode,
    code_to_truthtable,
    compose_codes,
    dot,
    encode,
    field_make,
    from_linear,
    general_catalog_get,
    instance_validate,
    linear_catalog_get,
    linear_encoder_view,
    load_general_code,
    restrict,
    truthtable_to_code,
    verify_confusability,
    verify_decoders,
    verify_linear,
)
from conftest import random_instance

# second transcription of the six encoder formulas: each symbol is the
# xor of these terms, each term the product of its variables
Z_TERMS = (
    ({1}, {4}, {6}, {7}, {10}, {21}),
    ({11}, {14}, {16}, {17}, {20}, {22}, {4, 6}, {4, 7}, {6, 7}),
    ({2}, {4}, {5}, {7}, {8}, {23}),
    ({12}, {14}, {15}, {17}, {18}, {24}, {4, 5}, {4, 7}, {5, 7}),
    ({3}, {5}, {6}, {7}, {9}, {25}),
    ({13}, {15}, {16}, {17}, {19}, {26}, {5, 6}, {5, 7}, {6, 7}),
)


def anf_eval(terms, x) -> int:
    acc = 0
    for term in terms:
        prod = 1
        for v in term:
            prod &= x[v - 1]
        acc ^= prod
    return acc


def oracle_confused_users(inst, code):
    """Definition chase: a colliding pair that differs at i and agrees on A_i."""
    space = list(itertools.product(range(code.q), repeat=code.m))
    words = {x: encode(code, x) for x in space}
    bad = set()
    for i in range(1, inst.m + 1):
        known = sorted(inst.known(i))
        for x, xp in itertools.combinations(space, 2):
            if x[i - 1] == xp[i - 1]:
                continue
            if any(x[j - 1] != xp[j - 1] for j in known):
                continue
            if words[x] == words[xp]:
                bad.add(i)
                break
    return bad


def test_builtin_names_and_aliases():
    assert GENERAL_CATALOG_NAMES == ("I1-binary", "I2-quadratic", "I3-concat", "I4-sum")
    assert general_catalog_get("paper-I2") is general_catalog_get("I2-quadratic")
    assert general_catalog_get("paper-I3") is general_catalog_get("I3-concat")
    assert general_catalog_get("paper-I4") is general_catalog_get("I4-sum")
    with pytest.raises(UnknownCode):
        general_catalog_get("I5-cubic")


def test_i2_encoder_double_entry():
    code = general_catalog_get("I2-quadratic")
    for j, terms in enumerate(Z_TERMS):
        support = sorted(set().union(*terms))
        for bits in itertools.product((0, 1), repeat=len(support)):
            x = [0] * 26
            for v, b in zip(support, bits):
                x[v - 1] = b
            assert encode(code, tuple(x))[j] == anf_eval(terms, x)


def test_i2_encoder_spot_value():
    code = general_catalog_get("I2-quadratic")
    x = [0] * 26
    x[3] = x[5] = 1  # users 4 and 6
    assert encode(code, tuple(x)) == (0, 1, 1, 0, 1, 0)
    assert encode(code, tuple([0] * 26)) == (0, 0, 0, 0, 0, 0)


def test_i2_decoders_sampled(i2):
    code = general_catalog_get("I2-quadratic")
    report = verify_decoders(i2, code, mode="sampled", samples=10**5)
    assert report.ok and report.inputs == 10**5


def test_i1_binary_decoders_exhaustive(i1):
    code = general_catalog_get("I1-binary")
    report = verify_decoders(i1, code)
    assert report.ok and report.mode == "exhaustive" and report.inputs == 1024
    conf = verify_confusability(i1, code)
    assert conf.ok


def test_encode_validation():
    code = general_catalog_get("I1-binary")
    with pytest.raises(LengthMismatch):
        encode(code, (0, 1))
    with pytest.raises(AlphabetMismatch):
        encode(code, (0, 1, 2, 0, 0, 0, 0, 0, 0, 0))


def test_broken_decoder_is_reported(i1):
    good = general_catalog_get("I1-binary")
    decoders = list(good.decoders)
    decoders[4] = lambda z, s: z[0] ^ 1
    bad = GeneralCode(
        m=good.m, q=good.q, r=good.r, encoder=good.encoder, decoders=tuple(decoders)
    )
    report = verify_decoders(i1, bad)
    assert not report.ok
    checks = {c.user: c for c in report.checks}
    assert not checks[5].ok
    assert checks[5].failures > 0
    assert all(checks[u].ok for u in range(1, 11) if u != 5)
    # the recorded counterexample really is one
    x = checks[5].first_failure
    z = encode(bad, x)
    side = {j: x[j - 1] for j in sorted(i1.known(5))}
    assert decoders[4](z, side) != x[4]


def test_verify_decoders_knobs(i2):
    code = general_catalog_get("I2-quadratic")
    with pytest.raises(BudgetExceeded):
        verify_decoders(i2, code, mode="exhaustive", budget=2**20)
    with pytest.raises(ValueError):
        verify_decoders(i2, code, mode="no-such-mode")
    table_only = truthtable_to_code(
        code_to_truthtable(general_catalog_get("I1-binary"))
    )
    with pytest.raises(ValueError):
        verify_decoders(restrict(i2, range(1, 11)), table_only)


def test_confusability_matches_definition_binary():
    rng = np.random.default_rng(51)
    for _ in range(40):
        m = int(rng.integers(2, 6))
        inst = random_instance(rng, m)
        f = field_make(2)
        rows = int(rng.integers(1, m + 1))
        mat = Matrix(
            f, tuple(tuple(int(v) for v in rng.integers(0, 2, m)) for _ in range(rows))
        )
        code = linear_encoder_view(inst, LinearCode(mat))
        report = verify_confusability(inst, code)
        bad = oracle_confused_users(inst, code)
        assert report.ok == (not bad)
        assert {c.user for c in report.checks if not c.ok} == bad


def test_confusability_matches_definition_ternary():
    rng = np.random.default_rng(52)
    for _ in range(25):
        m = int(rng.integers(2, 5))
        inst = random_instance(rng, m)
        f = field_make(3)
        rows = int(rng.integers(1, m + 1))
        mat = Matrix(
            f, tuple(tuple(int(v) for v in rng.integers(0, 3, m)) for _ in range(rows))
        )
        code = linear_encoder_view(inst, LinearCode(mat))
        report = verify_confusability(inst, code)
        bad = oracle_confused_users(inst, code)
        assert report.ok == (not bad)
        assert {c.user for c in report.checks if not c.ok} == bad


def test_confusability_witness_is_genuine():
    inst = instance_validate(2, [set(), set()])
    const = GeneralCode(m=2, q=2, r=1, encoder=lambda x: (x[0] & 0,), decoders=None)
    report = verify_confusability(inst, const)
    assert not report.ok
    for chk in report.checks:
        assert not chk.ok
        a, b = chk.witness
        assert a[chk.user - 1] != b[chk.user - 1]
        assert encode(const, a) == encode(const, b)


def test_linear_verdict_matches_confusability(i1):
    lin = linear_catalog_get("I1-binary")
    gen = linear_encoder_view(i1, lin)
    assert verify_linear(i1, lin).ok == verify_confusability(i1, gen).ok


def test_from_linear_agrees_with_matrix(i1):
    lin = linear_catalog_get("I1-binary")
    code = from_linear(i1, lin)
    rng = np.random.default_rng(53)
    f = lin.matrix.field
    for _ in range(100):
        x = tuple(int(v) for v in rng.integers(0, 2, 10))
        expect = tuple(
            dot(f, tuple(int(v) for v in lin.matrix.data[k]), x) for k in range(6)
        )
        assert encode(code, x) == expect


def test_from_linear_rejects_undecodable():
    inst = instance_validate(2, [set(), set()])
    f = field_make(2)
    zero = LinearCode(Matrix(f, ((0, 0),)))
    with pytest.raises(ValueError):
        from_linear(inst, zero)
    view = linear_encoder_view(inst, zero)  # but the view is fine
    assert view.decoders is None


def test_composition_rates_and_structure(i3, i4):
    c1 = general_catalog_get("I1-binary")
    c2 = general_catalog_get("I2-quadratic")
    c3 = compose_codes(c1, c2, "noway")
    c4 = compose_codes(c1, c2, "twoway")
    assert c3.r == 12 and c4.r == 6
    assert c3.parts == ("noway", c1, c2)
    assert c4.parts == ("twoway", c1, c2)
    assert verify_decoders(i3, c3, mode="sampled", samples=10**5).ok
    assert verify_decoders(i4, c4, mode="sampled", samples=10**5).ok
    with pytest.raises(ValueError):
        compose_codes(c1, c2, "sideway")


def test_twoway_sum_identity():
    c1 = general_catalog_get("I1-binary")
    c2 = general_catalog_get("I2-quadratic")
    c4 = general_catalog_get("I4-sum")
    rng = np.random.default_rng(54)
    for _ in range(500):
        x = tuple(int(v) for v in rng.integers(0, 2, 36))
        za, zb = encode(c1, x[:10]), encode(c2, x[10:])
        assert encode(c4, x) == tuple(a ^ b for a, b in zip(za, zb))


def test_twoway_pads_unequal_lengths(i1):
    from indexcode import compose_twoway

    single = instance_validate(1, [set()])
    tiny = from_linear(single, LinearCode(Matrix(field_make(2), ((1,),))))
    big = general_catalog_get("I1-binary")
    both = compose_codes(tiny, big, "twoway")
    assert both.r == 6
    inst = compose_twoway(single, i1)
    report = verify_decoders(inst, both)
    assert report.ok and report.mode == "exhaustive" and report.inputs == 2**11


def test_alphabet_mismatch_on_compose():
    single = instance_validate(1, [set()])
    f3 = field_make(3)
    ternary = from_linear(single, LinearCode(Matrix(f3, ((1,),))))
    with pytest.raises(AlphabetMismatch):
        compose_codes(ternary, general_catalog_get("I1-binary"), "noway")


def test_truthtable_round_trip(i1):
    c1 = general_catalog_get("I1-binary")
    text = code_to_truthtable(c1)
    lines = text.splitlines()
    assert lines[0] == "10 6 2"
    assert len(lines) == 1 + 2**10
    # message index packs user 1 in the lowest digit
    x = (1, 0, 0, 0, 0, 0, 0, 0, 0, 0)
    assert lines[1 + 1] == " ".join(map(str, encode(c1, x)))
    back = truthtable_to_code(text, name="round-trip")
    for idx, x in enumerate(itertools.product((0, 1), repeat=10)):
        msg = tuple(reversed(x))  # product varies the last place fastest
        assert encode(back, msg) == encode(c1, msg)
    assert verify_confusability(i1, back).ok


def test_truthtable_parse_errors():
    with pytest.raises(LengthMismatch):
        truthtable_to_code("1 1\n0\n")
    with pytest.raises(LengthMismatch):
        truthtable_to_code("1 1 2\n0\n")  # missing one of the two lines
    with pytest.raises(AlphabetMismatch):
        truthtable_to_code("1 1 2\n0\n2\n")
    with pytest.raises(BudgetExceeded):
        code_to_truthtable(general_catalog_get("I2-quadratic"))


def test_load_general_code(tmp_path):
    assert load_general_code("I2-quadratic").name == "I2-quadratic"
    assert load_general_code("paper-I2") is load_general_code("I2-quadratic")
    c1 = general_catalog_get("I1-binary")
    path = tmp_path / "code.tt"
    path.write_text(code_to_truthtable(c1))
    loaded = load_general_code(str(path))
    assert encode(loaded, (1,) * 10) == encode(c1, (1,) * 10)
    with pytest.raises(UnknownCode):
        load_general_code("missing-code")
