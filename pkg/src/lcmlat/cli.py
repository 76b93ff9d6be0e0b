"""Command line front end.

Subcommands read JSON documents (ideal, quotient pair, lattice, weighting),
write JSON reports, and map failures to exit codes: 1 for bad input, 2 for
configured resource limits, 3 for internal assertion failures, which includes
a census counterexample.  Output is byte-deterministic for fixed input.
"""

import argparse
import json
import sys

from .config import Config
from .errors import InvalidInput, LcmlatError, LimitExceeded
from . import classify as _classify
from . import lattice as _lattice
from . import monomials as _mono
from . import resolution as _resolution
from . import sdepth as _sdepth
from .realize import (
    canonical_realization as _canonical_realization,
    equalize_degrees as _equalize_degrees,
    realize as _do_realize,
    single_degree_pair as _single_degree_pair,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not JSON: {exc}")


def _kind(doc):
    if not isinstance(doc, dict):
        raise InvalidInput("top-level JSON object expected")
    if "I" in doc and "J" in doc:
        return "pair"
    if "generators" in doc:
        return "ideal"
    if "weights" in doc:
        return "weighting"
    if "covers" in doc:
        return "lattice"
    if "image" in doc:
        return "map"
    raise InvalidInput("unrecognized document shape")


def _emit(args, doc):
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args) -> Config:
    cfg = Config()
    field = getattr(args, "field", None)
    if field:
        if field == "Q":
            cfg.field = "Q"
        else:
            digits = "".join(ch for ch in field if ch.isdigit())
            if not digits:
                raise InvalidInput(f"cannot parse field {field!r}")
            cfg.field = ("GF", int(digits))
        cfg.validate_field()
    if getattr(args, "threads", None) is not None:
        if args.threads < 1:
            raise InvalidInput("--threads must be positive")
        cfg.threads = args.threads
    if getattr(args, "long_run", False):
        cfg.long_run = True
    return cfg


def _pair_from(doc, module):
    """A quotient pair from an ideal or pair document plus the module choice."""
    kind = _kind(doc)
    if kind == "pair":
        return _mono.pair_from_json(doc)
    if kind != "ideal":
        raise InvalidInput("need an ideal or quotient document")
    gens = _mono.gens_from_json(doc).minimalize()
    if module == "quotient-ring":
        return _mono.quotient_ring_pair(gens)
    return _mono.ideal_pair(gens)


def _obj_from(doc):
    kind = _kind(doc)
    if kind == "pair":
        return _mono.pair_from_json(doc)
    if kind == "ideal":
        return _mono.gens_from_json(doc)
    raise InvalidInput("need an ideal or quotient document")


def _obj_to_json(obj):
    if isinstance(obj, _mono.QuotientPair):
        return _mono.pair_to_json(obj)
    return _mono.gens_to_json(obj)


def _lattice_of(doc, cfg):
    kind = _kind(doc)
    if kind == "lattice":
        return _lattice.lattice_from_json(doc, cfg)
    if kind == "ideal":
        return _mono.lcm_semilattice(_mono.gens_from_json(doc), cfg).lattice
    if kind == "pair":
        pair = _mono.pair_from_json(doc)
        return _mono.lcm_semilattice(_mono.union_generators(pair), cfg).lattice
    raise InvalidInput("need a lattice, ideal, or quotient document")


def _cmd_lattice(args):
    cfg = _config(args)
    lat = _lattice_of(_load(args.input), cfg)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(_lattice.lattice_to_dot(lat))
    _emit(args, _lattice.lattice_to_json(lat))


def _cmd_weights(args):
    cfg = _config(args)
    gens = _mono.gens_from_json(_load(args.input))
    w = _mono.weight_map(gens, cfg)
    _emit(args, _mono.weighting_to_json(w))


def _cmd_realize(args):
    cfg = _config(args)
    w = _mono.weighting_from_json(_load(args.input), cfg)
    real = _do_realize(w.lattice, w, cfg)
    gens = real.gens.minimalize() if args.minimal else real.gens
    _emit(args, _mono.gens_to_json(gens))


def _cmd_canonical(args):
    cfg = _config(args)
    lat = _lattice_of(_load(args.input), cfg)
    real = _canonical_realization(lat, cfg)
    gens = real.gens.minimalize() if args.minimal else real.gens
    _emit(args, _mono.gens_to_json(gens))


def _cmd_equalize(args):
    cfg = _config(args)
    doc = _load(args.input)
    if _kind(doc) == "lattice":
        if not args.antichain:
            raise InvalidInput("a lattice input needs --antichain")
        lat = _lattice.lattice_from_json(doc, cfg)
        ids = [int(t) for t in args.antichain.split(",")]
        w = _equalize_degrees(lat, ids, config=cfg)
        _emit(args, _mono.weighting_to_json(w))
        return
    pair = _pair_from(doc, "ideal")
    out = _single_degree_pair(pair, cfg)
    _emit(args, _mono.pair_to_json(out))


def _cmd_sdepth(args):
    cfg = _config(args)
    pair = _pair_from(_load(args.input), args.module)
    _emit(args, _sdepth.sdepth_solve(pair, cfg).to_json())


def _cmd_betti(args):
    cfg = _config(args)
    pair = _pair_from(_load(args.input), args.module).minimalize()
    _emit(args, _resolution.taylor_betti(pair, cfg).to_json())


def _cmd_pdim(args):
    cfg = _config(args)
    pair = _pair_from(_load(args.input), args.module).minimalize()
    table = _resolution.taylor_betti(pair, cfg)
    _emit(args, {"pdim": table.pdim, "depth": table.depth, "field": table.field})


def _cmd_polarize(args):
    obj = _obj_from(_load(args.input))
    _emit(args, _obj_to_json(_mono.polarize(obj)))


def _cmd_radical(args):
    obj = _obj_from(_load(args.input))
    _emit(args, _obj_to_json(_mono.radical(obj)))


def _variables_of(obj):
    return obj.variables


def _cmd_colon(args):
    obj = _obj_from(_load(args.input))
    by = _mono.parse_monomial(args.by, _variables_of(obj))
    _emit(args, _obj_to_json(_mono.colon(obj, by)))


def _cmd_restrict(args):
    obj = _obj_from(_load(args.input))
    variables = _variables_of(obj)
    if args.var in variables:
        idx = variables.index(args.var)
    else:
        try:
            idx = int(args.var)
        except ValueError:
            raise InvalidInput(f"unknown variable {args.var!r}")
    _emit(args, _obj_to_json(_mono.restrict_variable(obj, idx)))


def _cmd_inflate(args):
    cfg = _config(args)
    obj = _obj_from(_load(args.input))
    was_ideal = isinstance(obj, _mono.GeneratorSet)
    pair = _mono.ideal_pair(obj) if was_ideal else obj
    m = _mono.parse_monomial(args.element, pair.variables)
    out = _mono.inflate(pair, m, cfg)
    _emit(args, _mono.gens_to_json(out.i) if was_ideal else _mono.pair_to_json(out))


def _cmd_deform(args):
    obj = _obj_from(_load(args.input))
    shifts = _load(args.shifts)
    if not isinstance(shifts, list):
        raise InvalidInput("shift document must be a list of exponent shifts")
    if isinstance(obj, _mono.QuotientPair):
        _emit(args, _mono.pair_to_json(_mono.deform_pair(obj, shifts)))
    else:
        _emit(args, _mono.gens_to_json(_mono.deform(obj, shifts)))


def _cmd_generic(args):
    gens = _mono.gens_from_json(_load(args.input)).minimalize()
    _emit(args, {"generic": _mono.is_generic(gens)})


def _cmd_isomorphic(args):
    cfg = _config(args)
    la = _lattice_of(_load(args.a), cfg)
    lb = _lattice_of(_load(args.b), cfg)
    _emit(args, {
        "isomorphic": _lattice.is_isomorphic(la, lb, cfg),
        "canonical_a": _lattice.canonical_form(la, cfg).decode(),
        "canonical_b": _lattice.canonical_form(lb, cfg).decode(),
    })


def _cmd_classify(args):
    cfg = _config(args)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        total = 0
        bad = []
        for record, lat in _classify.census(args.atoms, cfg, check=not args.no_check):
            out.write(json.dumps(record, sort_keys=True) + "\n")
            total += 1
            if record.get("counterexample"):
                bad.append((record, lat))
        summary = {"atoms": args.atoms, "classes": total,
                   "counterexamples": len(bad)}
        out.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")
    finally:
        if args.out:
            out.close()
    if bad:
        for record, lat in bad:
            bundle = {
                "record": record,
                "lattice": _lattice.lattice_to_json(lat),
                "realization": _mono.gens_to_json(
                    _canonical_realization(lat, cfg).gens
                ),
            }
            sys.stderr.write(json.dumps(bundle, sort_keys=True) + "\n")
        raise AssertionError(f"{len(bad)} counterexample(s) found")


def _cmd_check_map(args):
    cfg = _config(args)
    pa = _pair_from(_load(args.a), "ideal")
    pb = _pair_from(_load(args.b), "ideal")
    mdoc = _load(args.map)
    if _kind(mdoc) != "map":
        raise InvalidInput("the map document needs an 'image' list")
    check = _resolution.pdim_pair_invariance(
        pa, pb, [int(x) for x in mdoc["image"]], cfg, with_sdepth=args.with_sdepth
    )
    doc = {
        "bijective": check.bijective,
        "pdim_source": check.pdim_source,
        "pdim_target": check.pdim_target,
        "pdim_ok": check.pdim_ok,
    }
    if args.with_sdepth:
        doc.update({
            "spdim_source": check.spdim_source,
            "spdim_target": check.spdim_target,
            "spdim_ok": check.spdim_ok,
        })
    _emit(args, doc)
    assert check.ok, "a validated surjection must not increase the invariants"


def _build_parser():
    top = _Parser(prog="lcmlat", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_, inputs=("input",)):
        p = sub.add_parser(name, help=help_)
        for pos in inputs:
            p.add_argument(pos)
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--field", help="Q (default) or a prime like GF:5")
        p.add_argument("--threads", type=int, help="accepted; execution is sequential")
        p.set_defaults(fn=fn)
        return p

    p = cmd("lattice", _cmd_lattice, "lcm-semilattice of an ideal or pair")
    p.add_argument("--dot", help="also write a graphviz rendering here")
    cmd("weights", _cmd_weights, "standard weight map of an ideal")
    p = cmd("realize", _cmd_realize, "monomials from a weighting document")
    p.add_argument("--minimal", action="store_true")
    p = cmd("canonical", _cmd_canonical, "canonical squarefree realization of a lattice")
    p.add_argument("--minimal", action="store_true")
    p = cmd("equalize", _cmd_equalize, "equalize realized degrees on an antichain")
    p.add_argument("--antichain", help="comma-separated element indices (lattice input)")
    p = cmd("sdepth", _cmd_sdepth, "exact Stanley depth")
    p.add_argument("--module", choices=["ideal", "quotient-ring"], default="ideal")
    p = cmd("betti", _cmd_betti, "Betti numbers via the Taylor complex")
    p.add_argument("--module", choices=["ideal", "quotient-ring"], default="ideal")
    p = cmd("pdim", _cmd_pdim, "projective dimension and depth")
    p.add_argument("--module", choices=["ideal", "quotient-ring"], default="ideal")
    cmd("polarize", _cmd_polarize, "polarization")
    cmd("radical", _cmd_radical, "radical")
    p = cmd("colon", _cmd_colon, "colon by a monomial")
    p.add_argument("--by", required=True, help="a monomial like x^2*y")
    p = cmd("restrict", _cmd_restrict, "set one variable to zero and drop it")
    p.add_argument("--var", required=True, help="variable name or index")
    p = cmd("inflate", _cmd_inflate, "stretch generators away from one lattice element")
    p.add_argument("--element", required=True, help="a monomial that is an lcm of generators")
    p = cmd("deform", _cmd_deform, "apply an exponent deformation")
    p.add_argument("--shifts", required=True, help="JSON file with one shift row per generator")
    cmd("generic", _cmd_generic, "genericity test")
    cmd("isomorphic", _cmd_isomorphic, "compare two lattices up to isomorphism",
        inputs=("a", "b"))
    p = cmd("classify", _cmd_classify, "census of atomistic semilattices", inputs=())
    p.add_argument("--atoms", type=int, required=True)
    p.add_argument("--no-check", action="store_true", help="skip invariants")
    p.add_argument("--long-run", action="store_true", help="allow the largest census")
    cmd("check-map", _cmd_check_map, "validate a lattice surjection between two pairs",
        inputs=("a", "b", "map"))
    sub.choices["check-map"].add_argument("--with-sdepth", action="store_true")
    return top


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args.fn(args)
    except SystemExit:
        raise
    except LimitExceeded as exc:
        sys.stderr.write(f"limit: {exc}\n")
        raise SystemExit(2)
    except (InvalidInput, LcmlatError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        raise SystemExit(1)
    except AssertionError as exc:
        sys.stderr.write(f"internal assertion failed: {exc}\n")
        raise SystemExit(3)
    raise SystemExit(0)


if __name__ == "__main__":
    main()
