"""negbeta command line.

    negbeta SUBCOMMAND [--beta NAME|JSON | --spec FILE] [--json] [options]

Exit codes: 0 success, 1 failed check or error, 2 undecidable or
inconclusive.
"""
import argparse
import json
import sys
from fractions import Fraction

from . import acceptance, kernel
from .betaspec import TEST_SET, parse_beta_spec
from .codes import build_code, classify_regime
from .errors import CapInconclusive, NegBetaError, Undecidable
from .expansion import boundary_sequences, detect_period, digits_str, expand, parse_digits
from .gaps import gap_report, is_intransitive
from .language import census_automaton, census_enumeration, count_words_recurrence
from .measure import cylinder_measure, measure_report, sample_champernowne, series_identity_check

SUBCOMMANDS = ("expand", "bounds", "regime", "code", "census", "measure", "identity",
               "gaps", "sample", "verify")


class Failed(Exception):
    """A check ran and did not hold (exit 1)."""

    def __init__(self, report):
        self.report = report


def _spec(args):
    if args.spec:
        with open(args.spec) as fh:
            return parse_beta_spec(fh.read())
    return parse_beta_spec(args.beta)


def _setup(args):
    spec = _spec(args)
    bd = boundary_sequences(spec.beta, cap=args.iter_cap)
    return spec, bd


def _code(args, spec, bd, reg=None):
    reg = reg or classify_regime(spec.beta, bd)
    return reg, build_code(bd, regime=reg, beta=spec.beta, cap=args.code_cap)


def cmd_expand(args):
    spec = _spec(args)
    beta = spec.beta
    from .expansion import endpoints
    x = endpoints(beta)[0] if args.x is None else beta.const(Fraction(args.x))
    digits = expand(x, beta, args.count)
    rep = {"beta": spec.label, "x": "l_beta" if args.x is None else args.x,
           "digits": digits_str(digits)}
    if args.x is None:
        per = detect_period(beta, cap=args.iter_cap)
        rep["period"] = None if not per else {"preperiod": per[0], "period": per[1]}
    return rep


def cmd_bounds(args):
    spec, bd = _setup(args)
    return {"beta": spec.label, "d": bd.raw_d.render(), "d_star": bd.lower.render(),
            "r_star": bd.raw_rstar.render(), "r": bd.upper.render(),
            "odd_period": bd.odd_period_flag, "period_found": bd.period_found}


def cmd_regime(args):
    spec, bd = _setup(args)
    rep = classify_regime(spec.beta, bd)
    out = rep.as_dict()
    out["beta"] = spec.label
    return out


def cmd_code(args):
    spec, bd = _setup(args)
    reg, code = _code(args, spec, bd)
    out = code.as_dict(limit=args.limit)
    out["beta"] = spec.label
    out["regime"] = str(reg.regime)
    return out


def cmd_census(args):
    spec, bd = _setup(args)
    N = args.n
    rec = count_words_recurrence(bd, N).counts
    auto = census_automaton(bd, N).counts
    out = {"beta": spec.label, "recurrence": rec, "automaton": auto}
    ok = rec == auto
    if N <= args.enum_cap:
        enum = census_enumeration(bd, N, cap=args.enum_cap).counts
        out["enumeration"] = enum
        ok &= rec == enum
    out["agree"] = ok
    if not ok:
        raise Failed(out)
    return out


def cmd_measure(args):
    spec, bd = _setup(args)
    reg, code = _code(args, spec, bd)
    if args.word:
        cm = cylinder_measure(parse_digits(args.word), code, spec.beta, bd)
        out = cm.as_dict()
        out.update(beta=spec.label, word=args.word, code=code.label)
        if cm.interval is not None:
            out["value"] = cm.value
            out["width"] = float(cm.interval.width)
        return out
    rep = measure_report(code, spec.beta, bd, L=args.L)
    out = rep.as_dict()
    out.update(beta=spec.label, code=code.label)
    return out


def cmd_identity(args):
    spec, bd = _setup(args)
    rep = series_identity_check(bd, args.degree)
    out = rep.as_dict()
    out["beta"] = spec.label
    if not rep.ok:
        raise Failed(out)
    return out


def cmd_gaps(args):
    spec, bd = _setup(args)
    reg, code = _code(args, spec, bd)
    if args.word:
        res = is_intransitive(parse_digits(args.word), code, bd)
        out = res.as_dict()
        out.update(beta=spec.label, word=args.word)
        return out
    rep = gap_report(spec.beta, bd, args.max_len, code, reg)
    out = rep.as_dict()
    out["beta"] = spec.label
    if rep.inconclusive:
        raise CapInconclusive("%d words undecided" % len(rep.inconclusive),
                              words=[digits_str(w) for w in rep.inconclusive[:20]])
    return out


def cmd_sample(args):
    spec, bd = _setup(args)
    reg, code = _code(args, spec, bd)
    s = sample_champernowne(code, spec.beta, args.length, args.seed)
    out = {"beta": spec.label, "code": code.label, "length": len(s.stream), "seed": args.seed,
           "missing_mass": s.truncated_mass, "frequencies": {}}
    for w in args.words or ["0", "1"]:
        ww = parse_digits(w)
        out["frequencies"][w] = {"offset": s.frequency(ww), "aligned": s.aligned_frequency(ww)}
    if args.head:
        out["head"] = digits_str(s.stream[:args.head])
    return out


def cmd_verify(args):
    only = set(args.only) if args.only else None
    results = acceptance.run_all(only)
    out = {"backend": kernel.BACKEND, "criteria": [r.as_dict() for r in results],
           "passed": all(r.passed for r in results)}
    out["lines"] = [r.line() for r in results]
    if not out["passed"]:
        raise Failed(out)
    return out


COMMANDS = {name: globals()["cmd_" + name] for name in SUBCOMMANDS}


def build_parser():
    p = argparse.ArgumentParser(prog="negbeta", description="Negative beta-shifts: codes, measures, gaps.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_beta=True):
        if needs_beta:
            g = sp.add_mutually_exclusive_group()
            g.add_argument("--beta", default="example1",
                           help="bundled name (%s) or inline JSON spec" % ", ".join(TEST_SET))
            g.add_argument("--spec", help="file holding a JSON spec")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--iter-cap", type=int, default=4096)
        sp.add_argument("--enum-cap", type=int, default=18)
        sp.add_argument("--code-cap", type=int, default=40)

    sp = sub.add_parser("expand", help="digits of x (default l_beta)")
    common(sp)
    sp.add_argument("--x", help="rational point, e.g. 1/3")
    sp.add_argument("--count", type=int, default=30)
    sp = sub.add_parser("bounds", help="d, d*, r*, r")
    common(sp)
    sp = sub.add_parser("regime", help="position on the gamma_n ladder")
    common(sp)
    sp = sub.add_parser("code", help="materialize the support code")
    common(sp)
    sp.add_argument("--limit", type=int, default=50)
    sp = sub.add_parser("census", help="H_n by recurrence, automaton and enumeration")
    common(sp)
    sp.add_argument("--n", type=int, default=14)
    sp = sub.add_parser("measure", help="Kraft sum, average length, cylinder measure")
    common(sp)
    sp.add_argument("--word")
    sp.add_argument("--L", type=int, default=40)
    sp = sub.add_parser("identity", help="series identity check")
    common(sp)
    sp.add_argument("--degree", type=int, default=25)
    sp = sub.add_parser("gaps", help="gap report or a single intransitivity test")
    common(sp)
    sp.add_argument("--word")
    sp.add_argument("--max-len", type=int, default=8)
    sp = sub.add_parser("sample", help="Champernowne sample and cylinder frequencies")
    common(sp)
    sp.add_argument("--length", type=int, default=10 ** 6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--words", nargs="*")
    sp.add_argument("--head", type=int, default=0)
    sp = sub.add_parser("verify", help="run the acceptance suite")
    common(sp, needs_beta=False)
    sp.add_argument("--only", type=int, nargs="*")
    return p


def _emit(obj, as_json, stream):
    if as_json:
        stream.write(json.dumps(obj, sort_keys=True, default=str) + "\n")
        return
    if isinstance(obj, dict) and "lines" in obj:
        for line in obj["lines"]:
            stream.write(line + "\n")
        return
    for k in sorted(obj):
        v = obj[k]
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True, default=str)
        stream.write("%s: %s\n" % (k, v))


def main(argv=None, stream=None):
    stream = stream or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        out = COMMANDS[args.command](args)
        code = 0
    except Failed as f:
        out, code = f.report, 1
    except (Undecidable, CapInconclusive) as e:
        out, code = {"error": e.code, "message": str(e), "data": e.data}, 2
    except NegBetaError as e:
        out, code = {"error": e.code, "message": str(e), "data": e.data}, 1
    _emit(out, args.json, stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
