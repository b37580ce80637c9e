"""Command-line interface: ``syncstr <command> ...``.

Exit codes: 0 success, 1 verification or decoding failure, 2 usage or
parameter error. All randomness derives from --seed through SplitMix64.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import align, channel, chansim, codec, edindex, formats, syncgen
from .errors import DecodeFailure, GenerationError, ParameterError
from .rng import SplitMix64, derive_seed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

VERIFY_SYNC_MAX = 2048  # cubic verifier stays under a few seconds
VERIFY_LONGDIST_MAX = 64


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _write(path: str | None, data: str | bytes) -> None:
    if path is None or path == "-":
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
        else:
            sys.stdout.write(data)
        return
    Path(path).write_bytes(data if isinstance(data, bytes) else data.encode())


def _read_bytes(path: str) -> bytes:
    return sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()


# ------------------------------------------------------------- gen/verify


def cmd_gen_sync(a) -> int:
    n, eps, seed = a.n, a.eps, a.seed
    report = []
    if a.kind == "selfmatch":
        s = syncgen.gen_self_matching(n, eps, seed)
        ok = align.verify_self_matching(s, eps)
        report.append("VERIFIED" if ok else "NOT VERIFIED")
        report.append(f"self-matching size {align.self_matching_size(s)} < ceil({n}*{eps})")
    elif a.kind == "sync":
        s = syncgen.gen_sync(n, eps, seed)
        if n <= syncgen.BASE_MAX or syncgen.sync_alphabet(eps) >= n:
            report.append("VERIFIED" if align.verify_sync(s, eps) else "NOT VERIFIED")
        else:
            plan = syncgen.boost_plan(n, eps=eps)
            base = syncgen.gen_sync_base(plan.base_length, plan.base_eps, derive_seed(seed, "base"))
            base_ok = align.verify_sync(base, plan.base_eps)
            report.append("VERIFIED-BY-CONSTRUCTION (boosted)")
            report.append(
                f"base length {plan.base_length} verified at eps {float(plan.base_eps):.6f}: "
                f"{'yes' if base_ok else 'NO'}"
            )
            report.append(f"squaring steps gamma=1/g for g in {list(plan.divisors)}, lengths {plan.lengths}")
            report.append(f"guaranteed eps {float(plan.eps):.6f}")
            if a.full_verify and n <= VERIFY_SYNC_MAX:
                report.append(f"direct check: {'VERIFIED' if align.verify_sync(s, eps) else 'NOT VERIFIED'}")
    elif a.kind in ("longdist", "local"):
        build = syncgen.build_long_distance if a.kind == "longdist" else syncgen.build_local_index
        s = build(n, eps, seed)
        lay = syncgen.long_distance_layout(n, eps)
        report.append(f"block N={lay.block}, inner RS k={lay.k}, period l={lay.period}")
        if a.kind == "local":
            report.append(f"counter modulus {lay.counter_modulus}")
        if n <= VERIFY_LONGDIST_MAX:
            prof = align.long_distance_profile(s, a.c)
            ok = prof < Fraction(eps)
            report.append(f"{'VERIFIED' if ok else 'NOT VERIFIED'} at c={a.c}: measured eps' = {float(prof):.6f}")
        else:
            report.append("UNVERIFIED (n too large for the quartic checker)")
    else:  # infinite
        s = syncgen.infinite_prefix(n, eps, seed)
        report.append(f"prefix of length {n}; pieces at eps/2 = {float(Fraction(eps) / 2):.6f}")
    _write(a.out, formats.format_string(s))
    # the report goes to stderr when stdout carries the string itself
    sink = sys.stderr if a.out in (None, "-") else sys.stdout
    sink.write("".join(line + "\n" for line in report))
    return EXIT_OK


def cmd_verify(a) -> int:
    s = formats.parse_string(_read_bytes(a.inp).decode())
    eps = a.eps
    if a.kind == "selfmatch":
        size = align.self_matching_size(s)
        ok = size < math.ceil(len(s) * eps)
        print(f"{'VERIFIED' if ok else 'FAILED'}: self-matching size {size}, limit ceil({len(s)}*{eps})")
    elif a.kind == "sync":
        bad = align.sync_violation(s, eps)
        ok = bad is None
        if ok:
            print("VERIFIED")
        else:
            i, j, k = bad
            print(f"FAILED: triple i={i} j={j} k={k}")
    else:
        bad = align.long_distance_violation(s, eps, a.c)
        ok = bad is None
        print("VERIFIED" if ok else f"FAILED: intervals {bad[0]} and {bad[1]}")
    return EXIT_OK if ok else EXIT_FAIL


# ------------------------------------------------------ codec pipeline


def _unique_codec(a) -> codec.UniqueCodec:
    return codec.UniqueCodec(a.n, a.k, a.delta, a.field_bits, a.seed)


def cmd_encode(a) -> int:
    c = _unique_codec(a)
    if a.inp:
        msg = formats.parse_string(_read_bytes(a.inp).decode())
    else:
        msg = SplitMix64(derive_seed(a.seed, "message")).symbols(c.k, c.q_msg)
    word = c.encode(msg)
    _write(a.out, formats.write_ssix(word, c.q_msg, c.q_idx))
    return EXIT_OK


def _random_symbol_like(data: list):
    """Symbol sampler matching the shape and range of ``data``."""
    if data and isinstance(data[0], tuple):
        width = len(data[0])
        tops = [max(x[t] for x in data) + 1 for t in range(width)]
        return lambda rng: tuple(rng.below(top) for top in tops)
    top = max(data) + 1 if data else 2
    return lambda rng: rng.below(top)


def cmd_corrupt(a) -> int:
    raw = _read_bytes(a.inp)
    binary = raw[:4] == formats.MAGIC
    if binary:
        data, q_msg, q_idx = formats.read_ssix(raw)
        sampler = lambda rng: (rng.below(q_msg), rng.below(q_idx))  # noqa: E731
    else:
        data = formats.parse_string(raw.decode())
        sampler = _random_symbol_like(data)
    n = len(data)
    if a.script_in:
        script = formats.parse_script(Path(a.script_in).read_text())
    else:
        if a.gamma is None:
            budget = channel.split_budget(n, a.delta, a.seed)
        else:
            budget = channel.Budget(a.delta, a.gamma)
        if a.adversary == "random":
            script = channel.random_adversary(n, budget, a.seed, sampler)
        elif a.adversary == "burst":
            script = channel.burst_adversary(n, budget, a.seed, sampler)
        elif a.adversary == "least-frequent":
            key = (lambda s: s[0]) if binary else None
            script = channel.least_frequent_attack(data, None, budget, key=key)
        else:
            script = channel.periodic_insertion_attack(data, budget)
    out, _ = channel.apply(script, data)
    if a.script_out:
        Path(a.script_out).write_text(formats.format_script(script))
    if binary:
        _write(a.out, formats.write_ssix(out, q_msg, q_idx))
    else:
        _write(a.out, formats.format_string(out))
    return EXIT_OK


def cmd_decode(a) -> int:
    c = _unique_codec(a)
    pairs, _, _ = formats.read_ssix(_read_bytes(a.inp))
    try:
        msg = c.decode(pairs)
    except DecodeFailure as e:
        print(f"DECODE FAILURE: {e.reason}")
        return EXIT_FAIL
    _write(a.out, formats.format_string(msg))
    return EXIT_OK


# ---------------------------------------------------------- experiment

CSV_COLUMNS = [
    "trial", "n", "delta_del", "gamma_ins", "eps", "adversary",
    "incorrect_guesses", "undetermined", "erasures", "decoded_ok", "wall_ms", "seed",
]
ADVERSARIES = ("random", "burst", "least-frequent")


def _grid(cfg: dict) -> list[dict]:
    rows = cfg.get("sweep")
    if rows is not None:
        return rows
    keys = ("delta_del", "gamma_ins", "adversary")
    vals = [cfg[k] if isinstance(cfg[k], list) else [cfg[k]] for k in keys]
    return [dict(zip(keys, combo)) for combo in itertools.product(*vals)]


def run_trial(c: codec.UniqueCodec, delta_del, gamma_ins, adversary: str, seed: int) -> dict:
    msg = SplitMix64(derive_seed(seed, "message")).symbols(c.k, c.q_msg)
    word = c.encode(msg)
    budget = channel.Budget(delta_del, gamma_ins)
    sampler = lambda rng: (rng.below(c.q_msg), rng.below(c.q_idx))  # noqa: E731
    if adversary == "random":
        script = channel.random_adversary(c.n, budget, seed, sampler)
    elif adversary == "burst":
        script = channel.burst_adversary(c.n, budget, seed, sampler)
    elif adversary == "least-frequent":
        script = channel.least_frequent_attack(word, None, budget, key=lambda s: s[0])
    else:
        raise ParameterError(f"unknown adversary {adversary!r}")
    received, origin = channel.apply(script, word)
    try:
        rep = c.decode_report(received)
        ok = rep.message == msg
        guesses, erasures = rep.guesses, rep.erasures
    except DecodeFailure:
        ok = False
        guesses = codec.reposition_global(c.index_string, received, c.rounds)
        word_hat = codec.reconstruct(guesses, received, c.n)
        erasures = word_hat.count(codec.ERASURE)
    incorrect = sum(1 for g, o in zip(guesses, origin) if g is not None and g != o)
    undetermined = sum(1 for g in guesses if g is None)
    return dict(incorrect_guesses=incorrect, undetermined=undetermined, erasures=erasures, decoded_ok=int(ok))


def cmd_experiment(a) -> int:
    try:
        cfg = json.loads(Path(a.config).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ParameterError(f"cannot read config: {e}") from None
    trials = int(cfg.get("trials", 1))
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    seed = int(cfg.get("seed", a.seed))
    if cfg.get("preset", "desk") == "desk" and "n" not in cfg:
        c = codec.UniqueCodec.desk(seed)
    else:
        c = codec.UniqueCodec(int(cfg["n"]), int(cfg["k"]), Fraction(str(cfg.get("delta", "0.25"))),
                              int(cfg.get("field_bits", 16)), seed)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    trial_id = 0
    for row in _grid(cfg):
        d, g = Fraction(str(row["delta_del"])), Fraction(str(row["gamma_ins"]))
        adversary = row["adversary"]
        for _ in range(trials):
            tseed = derive_seed(seed, "trial", trial_id)
            start = time.perf_counter()
            res = run_trial(c, d, g, adversary, tseed)
            ms = round((time.perf_counter() - start) * 1000) if a.timing else 0
            w.writerow([
                trial_id, c.n, str(row["delta_del"]), str(row["gamma_ins"]), f"{float(c.eps):.6g}",
                adversary, res["incorrect_guesses"], res["undetermined"], res["erasures"],
                res["decoded_ok"], ms, tseed,
            ])
            trial_id += 1
    _write(a.out, buf.getvalue())
    return EXIT_OK


# ------------------------------------------------------------ wrappers


def cmd_ed_approx(a) -> int:
    if a.make_index:
        idx = edindex.build_ed_index(a.n, a.eps_i, a.seed)
        _write(a.out, formats.format_string(idx.sequence))
        return EXIT_OK
    if not (a.a and a.b):
        raise ParameterError("ed-approx needs --a and --b (or --make-index)")
    sa = formats.parse_string(Path(a.a).read_text())
    sb = formats.parse_string(Path(a.b).read_text())
    idx = edindex.build_ed_index(len(sa), a.eps_i, a.seed)
    if [edindex._isym(x) for x in sa] != idx.sequence:
        raise ParameterError("--a is not indexed by the edit-distance index for this --seed/--eps-i")
    approx = edindex.approx_matching(idx, sa, sb)
    print(f"estimate {approx.estimate}")
    print(f"matching {len(approx.matching)} edges-in-graph {approx.edges}")
    if a.exact:
        print(f"exact {align.edit_distance(sa, sb)}")
    return EXIT_OK


def cmd_simulate_channel(a) -> int:
    n = a.n
    sync = syncgen.gen_sync(n, a.eps, derive_seed(a.seed, "sync"))
    msgs = SplitMix64(derive_seed(a.seed, "messages")).symbols(n, 256)
    budget = channel.split_budget(n, a.delta, a.seed)
    sampler = lambda rng: (rng.below(256), sync[rng.below(n)])  # noqa: E731
    script = channel.random_adversary(n, budget, a.seed, sampler)
    rep = chansim.simulate(msgs, script, sync)
    print(f"{rep.corrupted} corruptions")
    print(f"channel edits {rep.channel_edits}, revealed {len(rep.revealed)} of {n}, "
          f"corrupted fraction {rep.corrupted_fraction:.6f}")
    return EXIT_OK


def _message_of(ident: int, q: int, k: int) -> list[int]:
    digits = []
    for _ in range(k):
        ident, d = divmod(ident, q)
        digits.append(d)
    return digits[::-1]


def _id_of(msg, q: int) -> int:
    v = 0
    for d in msg:
        v = v * q + d
    return v


def cmd_list_decode(a) -> int:
    c = codec.ListCodec(a.n, a.k, a.delta, a.gamma, a.field_bits, a.seed)
    space = c.code.q ** c.k
    ident = a.id if a.id is not None else SplitMix64(derive_seed(a.seed, "planted")).below(space)
    if not 0 <= ident < space:
        raise ParameterError(f"--id must lie in [0, {space})")
    msg = _message_of(ident, c.code.q, c.k)
    word = c.encode(msg)
    budget = channel.Budget(a.delta, a.gamma)
    sampler = lambda rng: (rng.below(c.code.q), c.index_string[rng.below(c.n)])  # noqa: E731
    script = channel.random_adversary(c.n, budget, a.seed, sampler)
    received, _ = channel.apply(script, word)
    found = sorted(_id_of(m, c.code.q) for m in c.decode(received))
    print(f"planted {ident}")
    print("list " + ",".join(str(x) for x in found))
    present = ident in found
    print("PRESENT" if present else "MISSING")
    return EXIT_OK if present else EXIT_FAIL


# --------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="syncstr", description="Synchronization strings and insdel codes")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-sync", help="generate a string")
    g.add_argument("--kind", choices=["selfmatch", "sync", "longdist", "local", "infinite"], required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--eps", type=_frac, required=True)
    g.add_argument("--c", type=_frac, default=Fraction(1))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.add_argument("--full-verify", action="store_true", help="also run the cubic checker on boosted strings")
    g.set_defaults(func=cmd_gen_sync)

    v = sub.add_parser("verify", help="check a string property")
    v.add_argument("--kind", choices=["selfmatch", "sync", "longdist"], required=True)
    v.add_argument("--eps", type=_frac, required=True)
    v.add_argument("--c", type=_frac, default=Fraction(1))
    v.add_argument("--in", dest="inp", required=True)
    v.set_defaults(func=cmd_verify)

    def codec_args(sp):
        sp.add_argument("--n", type=int, default=200)
        sp.add_argument("--k", type=int, default=120)
        sp.add_argument("--delta", type=_frac, default=Fraction(1, 4))
        sp.add_argument("--field-bits", type=int, default=16, choices=[4, 8, 16])
        sp.add_argument("--seed", type=int, default=0)

    e = sub.add_parser("encode", help="encode a message into an SSIX word")
    codec_args(e)
    e.add_argument("--in", dest="inp", help="message as a text string (default: random from --seed)")
    e.add_argument("--out")
    e.set_defaults(func=cmd_encode)

    c = sub.add_parser("corrupt", help="apply insertions and deletions")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--out")
    c.add_argument("--delta", type=_frac, default=Fraction(1, 10),
                   help="total edit fraction, or the deletion fraction when --gamma is given")
    c.add_argument("--gamma", type=_frac)
    c.add_argument("--adversary", choices=["random", "burst", "least-frequent", "periodic"], default="random")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--script-in")
    c.add_argument("--script-out")
    c.set_defaults(func=cmd_corrupt)

    d = sub.add_parser("decode", help="decode an SSIX word")
    codec_args(d)
    d.add_argument("--in", dest="inp", required=True)
    d.add_argument("--out")
    d.set_defaults(func=cmd_decode)

    x = sub.add_parser("experiment", help="run a configured sweep and write CSV")
    x.add_argument("--config", required=True)
    x.add_argument("--out")
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--timing", action="store_true", help="fill wall_ms (otherwise 0 for byte-stable output)")
    x.set_defaults(func=cmd_experiment)

    a = sub.add_parser("ed-approx", help="approximate edit distance via the index")
    a.add_argument("--a")
    a.add_argument("--b")
    a.add_argument("--eps-i", type=_frac, default=Fraction(1, 4))
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--exact", action="store_true")
    a.add_argument("--make-index", action="store_true")
    a.add_argument("--n", type=int, default=512)
    a.add_argument("--out")
    a.set_defaults(func=cmd_ed_approx)

    s = sub.add_parser("simulate-channel", help="half-error channel simulation")
    s.add_argument("--n", type=int, default=1000)
    s.add_argument("--delta", type=_frac, default=Fraction(0))
    s.add_argument("--eps", type=_frac, default=Fraction(1, 2))
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_simulate_channel)

    ld = sub.add_parser("list-decode", help="list-decoding round trip")
    ld.add_argument("--n", type=int, default=8)
    ld.add_argument("--k", type=int, default=2)
    ld.add_argument("--field-bits", type=int, default=4, choices=[4, 8, 16])
    ld.add_argument("--delta", type=_frac, default=Fraction(1, 5))
    ld.add_argument("--gamma", type=_frac, default=Fraction(3, 2))
    ld.add_argument("--id", type=int)
    ld.add_argument("--seed", type=int, default=0)
    ld.set_defaults(func=cmd_list_decode)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except GenerationError as e:
        print(f"generation failed after {e.attempts} attempts: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
