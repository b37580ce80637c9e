"""Acceptance suite: one test per criterion, each recording a pass/fail line.

The lines are printed in the terminal summary under "acceptance criteria".
"""

import math
import statistics
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import oracles
from conftest import record
from syncstr import align, chansim, channel, codec, edindex, formats, syncgen
from syncstr.channel import Budget
from syncstr.outercode.bukhma import bukh_ma_generate, bukh_ma_list_decode
from syncstr.rng import SplitMix64, derive_seed

SEED = 20240601


def _report(number, ok, detail):
    record(number, ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_01_self_matching_first_sample():
    n, eps = 1000, Fraction(1, 5)
    start = time.perf_counter()
    passed = sum(
        align.verify_self_matching(syncgen.sample_self_matching(n, eps, derive_seed(SEED, "c1", t), 0), eps)
        for t in range(20)
    )
    elapsed = time.perf_counter() - start
    q = syncgen.self_matching_alphabet(eps)
    ok = q == math.ceil(2 * math.e**2 / 0.04) and passed >= 19 and elapsed < 30
    _report(1, ok, f"{passed}/20 first samples verified (alphabet {q}), {elapsed:.1f} s")


def test_criterion_02_global_repositioning_bound():
    n, eps_s = 1000, Fraction(1, 100)
    rounds = math.ceil(1 / math.sqrt(eps_s))
    worst_total = worst_round = worst_round_all = 0
    for t in range(200):
        seed = derive_seed(SEED, "c2", t)
        s = syncgen.gen_self_matching(n, eps_s, seed)
        assert align.verify_self_matching(s, eps_s)
        q = syncgen.self_matching_alphabet(eps_s)
        word = codec.index([0] * n, s)
        budget = channel.split_budget(n, Fraction(1, 10), seed)
        script = channel.random_adversary(n, budget, seed, lambda rng: (0, rng.below(q)))
        received, origin = channel.apply(script, word)
        trace = codec.reposition_global_trace(s, received, rounds)
        bad = sum(1 for g, o in zip(trace.guesses, origin) if o is not None and g != o)
        worst_total = max(worst_total, bad)
        for rnd in trace.rounds:
            wrong = sum(1 for r, i in rnd if origin[r] is not None and origin[r] != i)
            worst_round = max(worst_round, wrong)
            worst_round_all = max(worst_round_all, sum(1 for r, i in rnd if origin[r] != i))
    ok = worst_total <= 3 * n * math.sqrt(eps_s) and worst_round <= n * eps_s
    _report(2, ok, f"max survivor misplaced+undetermined {worst_total} (bound 300); "
                   f"max per-round survivor mismatches {worst_round} (bound 10); "
                   f"counting inserted symbols {worst_round_all}")


def test_criterion_03_unique_codec_round_trip():
    c = codec.UniqueCodec.desk(0)
    draw = lambda rng: (rng.below(c.q_msg), rng.below(c.q_idx))  # noqa: E731
    results = {}
    for adversary in ("random", "least-frequent", "burst"):
        good = 0
        for t in range(200):
            seed = derive_seed(SEED, "c3", adversary, t)
            msg = SplitMix64(seed).symbols(c.k, c.q_msg)
            word = c.encode(msg)
            budget = channel.split_budget(c.n, c.delta, seed)
            if adversary == "random":
                script = channel.random_adversary(c.n, budget, seed, draw)
            elif adversary == "burst":
                script = channel.burst_adversary(c.n, budget, seed, draw)
            else:
                script = channel.least_frequent_attack(word, None, Budget(c.delta, 0), key=lambda x: x[0])
            received, _ = channel.apply(script, word)
            good += c.decode(received) == msg
        results[adversary] = good
    floor = Fraction(c.k * 16, c.n * (16 + math.ceil(math.log2(c.q_idx))))
    ok = all(v == 200 for v in results.values()) and c.rate >= floor
    summary = ", ".join(f"{a} {v}/200" for a, v in results.items())
    _report(3, ok, f"{summary}; rate {c.rate:.6f} >= {float(floor):.6f}")


def test_criterion_04_list_codec():
    c = codec.ListCodec.desk(0)
    present, sizes = 0, []
    for t in range(100):
        seed = derive_seed(SEED, "c4", t)
        msg = SplitMix64(seed).symbols(c.k, c.code.q)
        word = c.encode(msg)
        draw = lambda rng: (rng.below(c.code.q), c.index_string[rng.below(c.n)])  # noqa: E731
        script = channel.random_adversary(c.n, Budget(c.delta, c.gamma), seed, draw)
        received, _ = channel.apply(script, word)
        out = c.decode(received)
        present += msg in out
        sizes.append(len(out))
    ok = present == 100
    _report(4, ok, f"planted message listed {present}/100; mean list size {statistics.mean(sizes):.2f}, "
                   f"max {max(sizes)}")


def test_criterion_05_approx_ed():
    n, eps_i = 512, Fraction(1, 4)
    idx = edindex.build_ed_index(n, eps_i, SEED)
    payload = SplitMix64(derive_seed(SEED, "c5-payload")).symbols(n, 4)
    sxi = list(zip(payload, idx.sequence))
    draw = lambda rng: (rng.below(4), rng.below(idx.q))  # noqa: E731
    sound = close = 0
    worst = 0.0
    start = time.perf_counter()
    for t in range(500):
        seed = derive_seed(SEED, "c5", t)
        rng = SplitMix64(seed)
        budget = Budget(Fraction(rng.below(21), 100), Fraction(rng.below(21), 100))
        y, _ = channel.apply(channel.random_adversary(n, budget, seed, draw), sxi)
        est = edindex.approx_ed(idx, sxi, y)[1]
        exact = align.edit_distance(sxi, y)
        sound += est >= exact
        close += est <= (1 + eps_i) * max(exact, 1)
        worst = max(worst, est / max(exact, 1))
    elapsed = time.perf_counter() - start
    ok = sound == 500 and close >= 495 and elapsed < 120
    _report(5, ok, f"sound {sound}/500, within 1.25x {close}/500 (worst ratio {worst:.3f}), {elapsed:.1f} s")


def test_criterion_06_noncrossing_matching():
    agree = 0
    for t in range(1000):
        rng = SplitMix64(derive_seed(SEED, "c6", t))
        edges = [(rng.randint(1, 10), rng.randint(1, 10)) for _ in range(rng.randint(0, 20))]
        m = align.longest_noncrossing_matching(edges)
        valid = oracles.is_monotone(m) and set(m) <= set(edges)
        agree += valid and len(m) == oracles.max_noncrossing_search(edges)
    _report(6, agree == 1000, f"{agree}/1000 edge sets match exhaustive search")


def test_criterion_07_metric_axioms():
    violations = {"ED": 0, "RSD": 0}
    for t in range(100_000):
        rng = SplitMix64(derive_seed(SEED, "c7", t))
        q = 2 + rng.below(2)
        a, b, c = (rng.symbols(rng.randint(0, 40), q) for _ in range(3))
        for name, d in (("ED", align.edit_distance), ("RSD", align.rsd)):
            ab, ba, bc, ac = d(a, b), d(b, a), d(b, c), d(a, c)
            bad = (
                ab != ba
                or ac > ab + bc
                or d(a, a) != 0
                or (ab == 0) != (a == b)
                or ab < 0
                or (name == "RSD" and ab > 1)
            )
            violations[name] += bad
    ok = violations == {"ED": 0, "RSD": 0}
    _report(7, ok, f"10^5 triples: ED violations {violations['ED']}, RSD violations {violations['RSD']}")


def test_criterion_08_online_decoder():
    n, eps, delta = 500, Fraction(1, 2), Fraction(1, 20)
    s = syncgen.gen_sync(n, eps, derive_seed(SEED, "c8-sync"))
    assert align.verify_sync(s, eps)
    bound = 2 * n * delta / (1 - eps)
    within, counts = 0, []
    for t in range(100):
        seed = derive_seed(SEED, "c8", t)
        budget = channel.split_budget(n, delta, seed)
        script = channel.random_adversary(n, budget, seed, lambda rng: s[rng.below(n)])
        stream, origin = channel.apply(script, s)
        guesses = codec.reposition_online(s, stream)
        wrong = sum(1 for g, o in zip(guesses, origin) if g != o)
        counts.append(wrong)
        within += wrong <= bound
    clean = 0
    for t in range(100):
        st = syncgen.gen_sync(n, eps, derive_seed(SEED, "c8-clean", t))
        clean += codec.reposition_online(st, st) == list(range(1, n + 1))
    ok = within >= 95 and clean == 100
    _report(8, ok, f"within {float(bound):.0f} incorrect: {within}/100 (median {statistics.median(counts)}, "
                   f"max {max(counts)}); error-free streams exact {clean}/100")


def test_criterion_09_channel_simulation():
    n = 1000
    exact = True
    for t in range(3):
        msgs = SplitMix64(derive_seed(SEED, "c9-clean", t)).symbols(n, 256)
        rep = chansim.simulate(msgs, [], seed=derive_seed(SEED, "c9-clean-sync", t))
        exact &= bytes(rep.revealed) == bytes(msgs)
    delta = Fraction(1, 20)
    fractions = []
    for t in range(50):
        seed = derive_seed(SEED, "c9", t)
        sync = syncgen.gen_sync(n, Fraction(1, 2), derive_seed(seed, "sync"))
        msgs = SplitMix64(derive_seed(seed, "messages")).symbols(n, 256)
        budget = channel.split_budget(n, delta, seed)
        script = channel.random_adversary(n, budget, seed, lambda rng: (rng.below(256), sync[rng.below(n)]))
        fractions.append(chansim.simulate(msgs, script, sync).corrupted_fraction)
    ok = exact and max(fractions) <= 20 * delta
    _report(9, ok, f"delta=0 byte-exact: {exact}; delta=0.05 corrupted fraction mean "
                   f"{statistics.mean(fractions):.4f}, max {max(fractions):.4f} (envelope 1.0)")


def test_criterion_10_bukh_ma_lists():
    n, eps = 4096, Fraction(1, 2)
    family = bukh_ma_generate(n, eps)
    words = family.codewords()
    cap = math.ceil(8 / eps**3)
    small = listed = 0
    largest = 0
    for t in range(500):
        seed = derive_seed(SEED, "c10", t)
        rng = SplitMix64(seed)
        d = Fraction(rng.below(26), 100)
        g = Fraction(rng.below(int((1 - eps - 2 * d) * 100) + 1), 100)
        sent = words[rng.below(len(words))]
        y, _ = channel.apply(channel.random_adversary(n, Budget(d, g), seed, 2), sent)
        out = bukh_ma_list_decode(y, family, d, g)
        largest = max(largest, len(out))
        small += len(out) <= cap
        listed += sent in out
    ok = small == 500 and listed == 500
    _report(10, ok, f"periods {list(family.periods)}; list <= {cap} in {small}/500 (max {largest}); "
                    f"transmitted listed {listed}/500")


def _cli(args, cwd):
    p = subprocess.run([sys.executable, "-m", "syncstr", *map(str, args)], cwd=cwd,
                       capture_output=True, timeout=600)
    files = {f.name: f.read_bytes() for f in sorted(Path(cwd).iterdir()) if f.is_file()}
    return p.returncode, p.stdout, p.stderr, files


def test_criterion_11_cli_determinism(tmp_path):
    inputs = tmp_path / "inputs"
    inputs.mkdir()
    subprocess.run([sys.executable, "-m", "syncstr", "encode", "--seed", "7", "--out", inputs / "w.ssix"], check=True)
    subprocess.run([sys.executable, "-m", "syncstr", "corrupt", "--in", inputs / "w.ssix", "--delta", "0.2",
                    "--seed", "8", "--out", inputs / "r.ssix"], check=True)
    subprocess.run([sys.executable, "-m", "syncstr", "ed-approx", "--make-index", "--n", "256", "--seed", "3",
                    "--out", inputs / "idx.txt"], check=True)
    (inputs / "cfg.json").write_text('{"trials": 3, "seed": 5, "delta_del": [0.1, 0.2], "gamma_ins": 0.05, '
                                     '"adversary": ["random", "burst"]}')
    indexed = formats.parse_string((inputs / "idx.txt").read_text())
    (inputs / "b.txt").write_text(formats.format_string(indexed[3:]))
    commands = {
        "gen-sync selfmatch": ["gen-sync", "--kind", "selfmatch", "--n", 200, "--eps", 0.2, "--seed", 1, "--out", "s.txt"],
        "gen-sync sync": ["gen-sync", "--kind", "sync", "--n", 300, "--eps", 0.5, "--seed", 1, "--out", "s.txt"],
        "gen-sync longdist": ["gen-sync", "--kind", "longdist", "--n", 64, "--eps", 0.5, "--seed", 1],
        "gen-sync local": ["gen-sync", "--kind", "local", "--n", 64, "--eps", 0.5, "--seed", 1],
        "gen-sync infinite": ["gen-sync", "--kind", "infinite", "--n", 200, "--eps", 0.5, "--seed", 1],
        "verify": ["verify", "--kind", "sync", "--eps", 0.5, "--in", inputs / "idx.txt"],
        "encode": ["encode", "--seed", 7, "--out", "w.ssix"],
        "corrupt random": ["corrupt", "--in", inputs / "w.ssix", "--delta", 0.2, "--seed", 9, "--out", "r.ssix",
                           "--script-out", "sc.txt"],
        "corrupt burst": ["corrupt", "--in", inputs / "w.ssix", "--adversary", "burst", "--delta", 0.2,
                          "--seed", 9, "--out", "r.ssix"],
        "corrupt least-frequent": ["corrupt", "--in", inputs / "w.ssix", "--adversary", "least-frequent",
                                   "--delta", 0.25, "--seed", 9, "--out", "r.ssix"],
        "corrupt periodic": ["corrupt", "--in", inputs / "idx.txt", "--adversary", "periodic", "--delta", 0,
                             "--gamma", 0.5, "--seed", 9, "--out", "p.txt"],
        "decode": ["decode", "--seed", 7, "--in", inputs / "r.ssix", "--out", "m.txt"],
        "experiment": ["experiment", "--config", inputs / "cfg.json", "--out", "e.csv"],
        "ed-approx index": ["ed-approx", "--make-index", "--n", 256, "--seed", 3, "--out", "i.txt"],
        "ed-approx estimate": ["ed-approx", "--a", inputs / "idx.txt", "--b", inputs / "b.txt", "--seed", 3,
                               "--exact"],
        "simulate-channel": ["simulate-channel", "--n", 400, "--delta", 0.05, "--seed", 2],
        "list-decode": ["list-decode", "--seed", 4, "--id", 77],
    }
    differing = []
    for name, args in commands.items():
        runs = []
        for r in range(2):
            cwd = tmp_path / f"{name.replace(' ', '_')}_{r}"
            cwd.mkdir()
            runs.append(_cli(args, cwd))
        if runs[0] != runs[1] or not (runs[0][1] or runs[0][3]):
            differing.append(name)
    ok = not differing
    _report(11, ok, f"{len(commands) - len(differing)}/{len(commands)} commands byte-identical"
                    + (f"; differing: {', '.join(differing)}" if differing else ""))
