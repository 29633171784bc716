import random

import pytest

from eca_emulation import (
    EmulationWitness,
    Encoding,
    Word,
    check_emulation_naive,
    compose_witnesses,
    decode_config,
    dual,
    emulated_rule_map,
    emulated_rules,
    encode_config,
    is_self_similar,
    pair_closure,
    proper_subalgebra_search,
    rule_from_wolfram,
    singleton_closure,
    supercell_step,
    verify_witness,
)

R = rule_from_wolfram


def W(text):
    return Word.from_text(text)


def witness_for(f, g, k):
    enc = check_emulation_naive(R(f), R(g), k)
    assert enc is not None, f"expected {f} <=_{k} {g}"
    return EmulationWitness(R(f), R(g), k, enc)


# --- encodings ---------------------------------------------------------

def test_encoding_validation():
    with pytest.raises(ValueError):
        Encoding(2, W("00"), W("00"))
    with pytest.raises(ValueError):
        Encoding(2, W("0"), W("00"))
    with pytest.raises(ValueError):
        Encoding(0, Word.zeros(0), Word.zeros(0))


def test_encode_config_examples():
    e = Encoding(2, W("00"), W("11"))
    assert encode_config(e, W("101")).text == "110011"
    ident = Encoding(1, W("0"), W("1"))
    w = W("100110")
    assert encode_config(ident, w) == w
    e2 = Encoding(2, W("01"), W("10"))
    assert encode_config(e2, Word.zeros(0)) == Word.zeros(0)


def test_decode_inverts_encode():
    rng = random.Random(1)
    for _ in range(50):
        k = rng.randrange(1, 6)
        e0 = rng.randrange(1 << k)
        e1 = (e0 + 1 + rng.randrange((1 << k) - 1)) % (1 << k)
        if e0 == e1:
            continue
        e = Encoding(k, Word(e0, k), Word(e1, k))
        n = rng.randrange(0, 12)
        w = Word(rng.getrandbits(n), n)
        assert decode_config(e, encode_config(e, w)) == w
    with pytest.raises(ValueError):
        decode_config(Encoding(2, W("00"), W("11")), W("01"))


# --- naive scan --------------------------------------------------------

def test_naive_scan_trivial_reflexive():
    enc = check_emulation_naive(R(204), R(204), 1)
    assert (enc.enc0.bits, enc.enc1.bits) == (0, 1)


def test_naive_scan_dual_pair():
    enc = check_emulation_naive(R(110), R(137), 1)
    assert (enc.enc0.bits, enc.enc1.bits) == (1, 0)


def test_naive_scan_finds_size_two_witness():
    w = witness_for(184, 148, 2)
    assert w.holds()


def test_naive_scan_returns_first_in_scan_order():
    # every ordered pair is a valid encoding for the identity rule, so the
    # documented scan order fixes the answer completely
    enc = check_emulation_naive(R(204), R(204), 3)
    assert (enc.enc0.bits, enc.enc1.bits) == (0, 1)


def test_naive_scan_absence():
    assert check_emulation_naive(R(30), R(30), 2) is None
    assert check_emulation_naive(R(110), R(30), 1) is None


def test_reflexivity_all_rules():
    for n in range(256):
        assert check_emulation_naive(R(n), R(n), 1) is not None


def test_naive_scan_batched_path_agrees():
    # size 7 exercises the chunked path; cross-check against the listing
    for g in (204, 148, 30):
        listed = set(emulated_rule_map(R(g), 7))
        for f in (0, 30, 170, 184, 204):
            enc = check_emulation_naive(R(f), R(g), 7)
            assert (enc is not None) == (f in listed)
            if enc is not None:
                assert EmulationWitness(R(f), R(g), 7, enc).holds()


# --- subalgebra enumeration --------------------------------------------

def test_emulated_rules_identity_includes_doubling():
    entries = emulated_rules(R(204), 2)
    assert (R(204), Encoding(2, W("00"), W("11"))) in entries


def test_emulated_rules_constant_zero():
    # closure forces the operation to hit 00..0, so only the constant rules
    # can be induced; both orientations of each pair appear
    entries = emulated_rules(R(0), 3)
    assert {f.wolfram for f, _ in entries} == {0, 255}
    assert all(0 in (e.enc0.bits, e.enc1.bits) for _, e in entries)


def test_emulated_rules_traffic_pair():
    assert 184 in {f.wolfram for f, _ in emulated_rules(R(148), 2)}


def test_emulated_rules_sorted_deduplicated():
    entries = emulated_rules(R(204), 3)
    keys = [(f.wolfram, e.enc0.bits, e.enc1.bits) for f, e in entries]
    assert keys == sorted(set(keys))


def test_emulated_rules_closed_under_duality():
    for g in (148, 110, 90, 136):
        for k in (2, 3):
            rules = {f.wolfram for f, _ in emulated_rules(R(g), k)}
            assert rules == {dual(R(f)).wolfram for f in rules}


def test_emulated_rule_map_minimal_encodings():
    m = emulated_rule_map(R(204), 2)
    assert sorted(m) == [204]
    assert (m[204].enc0.bits, m[204].enc1.bits) == (0, 1)
    full = emulated_rules(R(204), 2)
    firsts = {}
    for f, e in full:
        firsts.setdefault(f.wolfram, e)
    assert firsts == {f: e for f, e in m.items()}


def test_cross_oracle_small_sizes():
    # the naive scan and the subalgebra enumeration must accept the same
    # rule sets; exhaustive here at size 1 and 2, larger sizes in the
    # acceptance suite
    for g in range(256):
        for k in (1, 2):
            s2 = set(emulated_rule_map(R(g), k))
            s1 = {f for f in range(256)
                  if check_emulation_naive(R(f), R(g), k) is not None}
            assert s1 == s2, (g, k)


def test_duality_transport():
    # f <=_k g exactly when dual(f) <=_k dual(g), and complementing the
    # encoding cellwise transports the witness
    for g in range(0, 256, 7):
        for k in (1, 2, 3):
            rules = emulated_rule_map(R(g), k)
            dual_rules = set(emulated_rule_map(dual(R(g)), k))
            assert dual_rules == {dual(R(f)).wolfram for f in rules}
            # transport: complement every cell and swap the two code words
            full = (1 << k) - 1
            for f, enc in rules.items():
                flipped = Encoding(k, Word(enc.enc1.bits ^ full, k),
                                   Word(enc.enc0.bits ^ full, k))
                carried = EmulationWitness(dual(R(f)), dual(R(g)), k, flipped)
                assert carried.holds(), (g, f, k)


# --- witness verification ----------------------------------------------

def test_verify_witness_valid_dual_pair():
    assert verify_witness(witness_for(110, 137, 1), 20, 5)


def test_verify_witness_swapped_encoding_fails():
    bad = EmulationWitness(R(110), R(137), 1, Encoding(1, W("0"), W("1")))
    assert not bad.holds()
    assert not verify_witness(bad, 20, 5)


def test_verify_witness_size_two():
    assert verify_witness(witness_for(184, 148, 2), 30, 5)


def test_verify_witness_rejects_bad_dimensions():
    w = witness_for(110, 137, 1)
    with pytest.raises(ValueError):
        verify_witness(w, 10, 5)  # needs length >= 2*horizon + 1
    with pytest.raises(ValueError):
        verify_witness(w, 20, -1)
    with pytest.raises(ValueError):
        verify_witness(w, 20, 5, samples=-1)


def test_verify_witness_deterministic_in_seed():
    w = witness_for(184, 148, 2)
    assert verify_witness(w, 30, 5, samples=10, seed=42) \
        == verify_witness(w, 30, 5, samples=10, seed=42)


def test_witness_json_roundtrip():
    w = witness_for(184, 148, 2)
    assert EmulationWitness.from_json_dict(w.to_json_dict()) == w


# --- composition --------------------------------------------------------

def test_compose_identity_witnesses():
    ident = witness_for(110, 110, 1)
    out = compose_witnesses(ident, ident)
    assert out.k == 1 and out.emulated == out.emulator == R(110)


def test_compose_dual_witnesses_yields_identity():
    w1 = witness_for(110, 137, 1)
    w2 = witness_for(137, 110, 1)
    out = compose_witnesses(w1, w2)
    assert (out.emulated, out.emulator, out.k) == (R(110), R(110), 1)
    assert (out.encoding.enc0.bits, out.encoding.enc1.bits) == (0, 1)


def test_compose_with_trivial_side():
    w1 = witness_for(184, 148, 2)
    w2 = witness_for(148, 148, 1)
    out = compose_witnesses(w1, w2)
    assert out.k == 2
    assert out.encoding == w1.encoding
    assert verify_witness(out, 30, 5)


def test_compose_nontrivial_sizes_multiply():
    w1 = witness_for(184, 148, 2)
    w2 = witness_for(148, 41, 2)
    out = compose_witnesses(w1, w2)
    assert (out.emulated, out.emulator, out.k) == (R(184), R(41), 4)
    assert verify_witness(out, 30, 3, samples=30)


def test_compose_self_similar_chain():
    w1 = witness_for(204, 204, 2)
    out = compose_witnesses(w1, w1)
    assert (out.emulated, out.emulator, out.k) == (R(204), R(204), 4)
    assert verify_witness(out, 30, 3, samples=30)


def test_compose_rejects_rule_mismatch():
    with pytest.raises(ValueError):
        compose_witnesses(witness_for(110, 137, 1), witness_for(110, 137, 1))


# --- closures -----------------------------------------------------------

def test_singleton_closure_examples():
    s = singleton_closure(R(204), 2, W("01"))
    assert s.elements == frozenset({W("01")})
    s = singleton_closure(R(0), 2, W("11"))
    assert s.elements == frozenset({W("11"), W("00")})
    s = singleton_closure(R(30), 1, W("0"))
    assert s.elements == frozenset({W("0")})


def test_pair_closure_examples():
    s = pair_closure(R(204), 2, W("00"), W("11"))
    assert s.elements == frozenset({W("00"), W("11")})
    enc = check_emulation_naive(R(184), R(148), 2)
    s = pair_closure(R(148), 2, enc.enc0, enc.enc1)
    assert s.elements == frozenset({enc.enc0, enc.enc1})
    assert s.is_closed() and s.is_proper
    for u in range(4):
        for v in range(u + 1, 4):
            assert pair_closure(R(30), 2, Word(u, 2), Word(v, 2)) is None
    with pytest.raises(ValueError):
        pair_closure(R(30), 2, W("01"), W("01"))


def test_pair_closure_respects_cap():
    # closure of {00, 11} under rule 30 at size 2 is the full algebra
    assert pair_closure(R(30), 2, W("00"), W("11"), cap=4) is not None
    assert pair_closure(R(30), 2, W("00"), W("11"), cap=3) is None


def test_closures_are_closed():
    rng = random.Random(3)
    for _ in range(40):
        k = rng.randrange(1, 5)
        g = R(rng.randrange(256))
        u = Word(rng.getrandbits(k), k)
        s = singleton_closure(g, k, u)
        assert s.is_closed()
        elems = sorted(s.elements, key=lambda w: w.bits)
        for a in elems[:4]:
            for b in elems[:4]:
                for c in elems[:4]:
                    assert s.op(a, b, c) in s.elements


def test_induced_table_agrees_with_supercell_step():
    s = pair_closure(R(148), 2, W("00"), W("01"), cap=4) or \
        singleton_closure(R(148), 2, W("00"))
    table = s.induced_table()
    for (a, b, c), out in table.items():
        assert out == supercell_step(R(148), 2, a, b, c)


def brute_has_proper_subalgebra(g, k):
    """Exhaust all subsets of the supercells; oracle for the search."""
    n = 1 << k
    cells = [Word(u, k) for u in range(n)]
    for mask in range(1, 1 << n):
        members = [u for u in range(n) if (mask >> u) & 1]
        if not 2 <= len(members) < n:
            continue
        mset = set(members)
        if all(supercell_step(g, k, cells[a], cells[b], cells[c]).bits in mset
               for a in members for b in members for c in members):
            return True
    return False


def test_search_matches_subset_oracle_size_two():
    for n in range(256):
        g = R(n)
        found = proper_subalgebra_search(g, 2)
        assert (found is not None) == brute_has_proper_subalgebra(g, 2), n
        if found is not None:
            assert found.is_proper and len(found.elements) >= 2 and found.is_closed()


def test_search_matches_subset_oracle_size_three():
    for n in (0, 18, 30, 45, 60, 86, 89, 90, 105, 110, 122, 137, 150, 164, 204, 232):
        g = R(n)
        found = proper_subalgebra_search(g, 3)
        assert (found is not None) == brute_has_proper_subalgebra(g, 3), n


def test_proper_subalgebra_search_examples():
    s = proper_subalgebra_search(R(204), 3)
    assert s is not None and s.is_proper and len(s.elements) >= 2
    assert s.is_closed()
    for k in (2, 3, 4):
        assert proper_subalgebra_search(R(30), k) is None
    s = proper_subalgebra_search(R(90), 2)
    assert s is not None and len(s.elements) == 2


def test_results_independent_of_partition_size(monkeypatch):
    # the pair space is scanned in chunks; shrinking the chunk to a couple
    # of pairs must not change any result, including first-hit answers
    import eca_emulation.emulation as emu

    listing = emulated_rules(R(148), 3)
    first = check_emulation_naive(R(184), R(148), 2)
    search = proper_subalgebra_search(R(110), 3)
    monkeypatch.setattr(emu, "_CHUNK", 3)
    assert emulated_rules(R(148), 3) == listing
    assert check_emulation_naive(R(184), R(148), 2) == first
    assert proper_subalgebra_search(R(110), 3) == search


def test_self_similarity():
    assert is_self_similar(R(204), 11) == 2
    assert is_self_similar(R(90), 11) == 2
    k184 = is_self_similar(R(184), 11)
    assert k184 is not None and 2 <= k184 <= 11
    assert is_self_similar(R(30), 6) is None
    with pytest.raises(ValueError):
        is_self_similar(R(30), 1)
