"""Command-line harness: algebra spec files, catalog invocation, verification
campaigns, family printing, transfer, reduction, and report emission.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 precondition
violation, 4 resource refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .algebras import (
    GradedAlgebra,
    build_catalog,
    catalog_ids,
    center,
    check_graded_division,
    coarsen_by_quotient,
    detect_regular,
    invert,
    tensor,
)
from .errors import (
    PreconditionError,
    ResourceRefusal,
    SpecParseError,
    VerificationFailure,
)
from .freealg import FreePoly, parse_poly
from .groups import FiniteAbelianGroup, quotient_by
from .pitool import (
    GeneratorSet,
    bp_basis,
    check_pauli_multidegree,
    s4_hall_basis,
    dv_basis,
    family_pauli,
    family_regular,
    lift_basis,
    okhitin_basis,
    pauli_reduce,
    replay_certificate,
    transfer_basis,
    verify_basis,
)
from .scalars import Cyclo, parse_cyclo

ALGEBRA_FORMAT = "gradedpi-algebra"
GENSET_FORMAT = "gradedpi-genset"
FORMAT_VERSION = 1

GLOBAL_ASSUMPTIONS = [
    "graded tensor products are the plain tensor product with the "
    "product-group grading",
]


# -- algebra spec files ---------------------------------------------------------------


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecParseError(str(exc.msg), line=exc.lineno, column=exc.colno)
    except OSError as exc:
        raise SpecParseError("cannot read %s: %s" % (path, exc))


def _parse_group(doc):
    orders = doc.get("orders")
    if not isinstance(orders, list) or not all(isinstance(o, int) for o in orders):
        raise SpecParseError("group.orders must be a list of integers")
    names = doc.get("generators")
    return FiniteAbelianGroup(tuple(orders), tuple(names) if names else None)


def load_algebra_spec(path) -> GradedAlgebra:
    """Load an algebra from a spec file: either a catalog entry with
    parameters or an explicit basis with degrees and multiplication table."""
    doc = _load_json(path)
    if doc.get("format") != ALGEBRA_FORMAT:
        raise SpecParseError("not a %s file" % ALGEBRA_FORMAT)
    if doc.get("version") != FORMAT_VERSION:
        raise SpecParseError("unsupported version %r" % doc.get("version"))
    if "catalog" in doc:
        entry = doc["catalog"]
        return build_catalog(entry["id"], **entry.get("params", {}))
    order = doc.get("cyclotomic_order", 1)
    group = _parse_group(doc.get("group", {}))
    basis = doc.get("basis")
    if basis is None:
        raise SpecParseError("spec file needs either 'catalog' or 'basis'")
    labels = basis["labels"]
    index = {lab: k for k, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise SpecParseError("duplicate basis labels")
    try:
        degrees = [group.word_to_element(basis["degrees"][lab]) for lab in labels]
    except (KeyError, ValueError) as exc:
        raise SpecParseError("bad degree map: %s" % exc)
    mult = {}
    for key, row in basis.get("mult", {}).items():
        try:
            la, lb = key.split("*")
            i, j = index[la.strip()], index[lb.strip()]
        except (ValueError, KeyError):
            raise SpecParseError("bad product key %r" % key)
        entry = {}
        for lab, lit in row:
            entry[index[lab]] = parse_cyclo(lit, order)
        mult[(i, j)] = entry
    unit = {}
    for lab, lit in basis.get("unit", []):
        unit[index[lab]] = parse_cyclo(lit, order)
    try:
        algebra = GradedAlgebra(group, order, labels, degrees, mult, unit,
                                name=doc.get("name", os.path.basename(path)))
    except ValueError as exc:
        raise SpecParseError("algebra fails construction invariants: %s" % exc)
    sets = {}
    for entry in doc.get("generator_sets", []):
        gname = entry.get("name")
        if not gname:
            raise SpecParseError("generator_sets entries need a name")
        mode = entry.get("mode", "identities")
        sets[gname] = GeneratorSet(
            gname, mode, algebra.group, entry.get("cyclotomic_order", order),
            s1=[parse_poly(t, algebra.group, order) for t in entry.get("s1", [])],
            s2=[parse_poly(t, algebra.group, order) for t in entry.get("s2", [])],
            assumptions=entry.get("assumptions", []))
    algebra.file_gensets = sets
    return algebra


def algebra_spec_dict(algebra: GradedAlgebra) -> dict:
    """Serialize an algebra so that loading reproduces it exactly."""
    mult = {}
    for (i, j), row in sorted(algebra.mult.items()):
        key = "%s*%s" % (algebra.labels[i], algebra.labels[j])
        mult[key] = [[algebra.labels[k], str(c)] for k, c in sorted(row.items())]
    return {
        "format": ALGEBRA_FORMAT,
        "version": FORMAT_VERSION,
        "name": algebra.name,
        "cyclotomic_order": algebra.order,
        "group": {"orders": list(algebra.group.orders),
                  "generators": list(algebra.group.gen_names)},
        "basis": {
            "labels": list(algebra.labels),
            "degrees": {lab: algebra.group.element_to_word(d)
                        for lab, d in zip(algebra.labels, algebra.degrees)},
            "mult": mult,
            "unit": [[algebra.labels[k], str(c)]
                     for k, c in sorted(algebra.unit.items())],
        },
    }


def load_genset_spec(path, algebra: GradedAlgebra) -> GeneratorSet:
    doc = _load_json(path)
    if doc.get("format") != GENSET_FORMAT:
        raise SpecParseError("not a %s file" % GENSET_FORMAT)
    if doc.get("version") != FORMAT_VERSION:
        raise SpecParseError("unsupported version %r" % doc.get("version"))
    mode = doc.get("mode", "identities")
    order = doc.get("cyclotomic_order", algebra.order)
    group = algebra.group
    s1 = [parse_poly(t, group, order) for t in doc.get("s1", [])]
    s2 = [parse_poly(t, group, order) for t in doc.get("s2", [])]
    return GeneratorSet(doc.get("name", os.path.basename(path)), mode, group,
                        order, s1=s1, s2=s2,
                        assumptions=doc.get("assumptions", []))


def genset_spec_dict(genset: GeneratorSet) -> dict:
    return {
        "format": GENSET_FORMAT,
        "version": FORMAT_VERSION,
        "name": genset.name,
        "mode": genset.mode,
        "cyclotomic_order": genset.order,
        "group": {"orders": list(genset.group.orders),
                  "generators": list(genset.group.gen_names)},
        "s1": [str(f) for f in genset.s1],
        "s2": [str(f) for f in genset.s2],
        "extras": [str(f) for f in genset.extras],
        "assumptions": list(genset.assumptions),
    }


def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gradedpi-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- algebra and basis resolution -------------------------------------------------------


def resolve_algebra(args) -> GradedAlgebra:
    spec = args.algebra
    if spec is None:
        raise PreconditionError("--algebra is required")
    if os.path.exists(spec) and spec.endswith(".json"):
        return load_algebra_spec(spec)
    params = {}
    for key in ("n", "m", "k", "l", "eps", "mu", "nu"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    return build_catalog(spec, **params)


def _auto_lift_degree(algebra):
    """A degree carrying an invertible central element whose quotient is a
    two-element group (the corollary shape); the identity degree is the
    trivial-quotient fallback."""
    candidates = sorted(center(algebra),
                        key=lambda h: (h.degree == algebra.group.identity, h.degree))
    for h in candidates:
        if invert(algebra, h.coords) is None:
            continue
        quotient, _ = quotient_by(algebra.group, h.degree)
        if quotient.orders == (2,):
            return h.degree
    raise PreconditionError(
        "no invertible central homogeneous element with a two-element quotient")


def resolve_basis(name, algebra, mode, max_degree) -> GeneratorSet:
    file_sets = getattr(algebra, "file_gensets", {})
    if name in file_sets:
        return file_sets[name]
    if os.path.exists(name) and name.endswith(".json"):
        return load_genset_spec(name, algebra)
    if name in ("dv-lemma", "bp-centrals"):
        if tuple(algebra.group.orders) != (2,):
            raise PreconditionError("%s needs a two-element grading group" % name)
        return dv_basis(algebra.group) if name == "dv-lemma" else bp_basis(algebra.group)
    if name == "s4-hall":
        return s4_hall_basis()
    if name == "okhitin":
        return okhitin_basis()
    if name == "regular":
        beta, witness = detect_regular(algebra)
        if beta is None:
            raise PreconditionError("the grading is not regular: %r" % witness)
        return family_regular(beta, mode)
    if name == "pauli":
        return family_pauli(algebra, max_degree)
    if name == "corollary":
        g = _auto_lift_degree(algebra)
        quotient_alg = coarsen_by_quotient(algebra, g)
        base = dv_basis(quotient_alg.group) if mode == "identities" \
            else bp_basis(quotient_alg.group)
        return lift_basis(algebra, g, base,
                          name="corollary-%s(%s)" % (mode, algebra.name))
    raise PreconditionError(
        "unknown basis %r (named: dv-lemma, bp-centrals, s4-hall, okhitin, "
        "regular, pauli, corollary, or a .json generator-set file)" % name)


# -- commands -------------------------------------------------------------------------------


def cmd_build(args):
    algebra = resolve_algebra(args)
    info = {
        "name": algebra.name,
        "dimension": algebra.dim,
        "group_orders": list(algebra.group.orders),
        "support_size": len(algebra.support),
        "cyclotomic_order": algebra.order,
    }
    ok, cert = check_graded_division(algebra)
    info["graded_division"] = ok
    if ok:
        info["identity_component"] = cert["e_class"]
    beta, witness = detect_regular(algebra)
    info["regular"] = beta is not None
    if beta is None and witness is not None:
        info["regularity_witness"] = witness.reason
    print(json.dumps(info, indent=2))
    if args.out:
        _write_atomic(args.out, json.dumps(algebra_spec_dict(algebra), indent=2) + "\n")
        print("wrote %s" % args.out)
    return 0


def cmd_verify(args):
    algebra = resolve_algebra(args)
    genset = resolve_basis(args.basis, algebra, args.mode, args.max_degree)
    if genset.mode != args.mode:
        raise PreconditionError(
            "basis %s has mode %s, requested %s" % (genset.name, genset.mode, args.mode))
    report = verify_basis(algebra, genset, args.max_degree, jobs=args.jobs)
    report.assumptions.extend(GLOBAL_ASSUMPTIONS)
    if args.long_running:
        record = _long_running_record(algebra)
        if record is not None:
            report.records.append(record)
    text = report.to_json() if args.format == "json" else report.to_tsv()
    if args.out:
        _write_atomic(args.out, text + ("\n" if not text.endswith("\n") else ""))
    else:
        sys.stdout.write(text + "\n")
    print(report.summary(), file=sys.stderr)
    return 0 if report.ok and all(r.equal for r in report.records) else 1


def _long_running_record(algebra):
    """The degree-seven multidegree of the alternating family, when the
    algebra has commutation value i (the optional long check)."""
    from .algebras import detect_complex_bicharacter

    beta, _ = detect_complex_bicharacter(algebra)
    if beta is None:
        return None
    group = beta.group
    i_val = Cyclo.zeta(beta.order, beta.order // 4)
    for g in group.elements():
        partners = [h for h in group.elements() if beta.eval(g, h) == i_val]
        if len(partners) >= 3:
            h1, h2, h3 = partners[:3]
            return check_pauli_multidegree(algebra, [g, h1, g, h2, g, h3, g])
    return None


def cmd_families(args):
    algebra = resolve_algebra(args)
    genset = resolve_basis(args.basis, algebra, args.mode, args.max_degree)
    if args.format == "json":
        text = json.dumps(genset_spec_dict(genset), indent=2)
    else:
        lines = ["# %s (%s)" % (genset.name, genset.mode)]
        for f in genset.s1:
            lines.append("s1\t%s" % f)
        for f in genset.s2:
            lines.append("s2\t%s" % f)
        for f in genset.extras:
            lines.append("extra\t%s" % f)
        text = "\n".join(lines)
    if args.out:
        _write_atomic(args.out, text + "\n")
    else:
        print(text)
    return 0


def cmd_transfer(args):
    algebra = resolve_algebra(args)
    if not args.with_algebra:
        raise PreconditionError("--with <catalog-id> is required for transfer")
    factor = build_catalog(args.with_algebra)
    genset = resolve_basis(args.basis, algebra, args.mode, args.max_degree)
    transferred = transfer_basis(genset, factor)
    if args.verify:
        product = tensor(algebra, factor)
        report = verify_basis(product, transferred, args.max_degree, jobs=args.jobs)
        report.assumptions.extend(GLOBAL_ASSUMPTIONS)
        text = report.to_json() if args.format == "json" else report.to_tsv()
        if args.out:
            _write_atomic(args.out, text + "\n")
        else:
            sys.stdout.write(text + "\n")
        print(report.summary(), file=sys.stderr)
        return 0 if report.ok else 1
    text = json.dumps(genset_spec_dict(transferred), indent=2)
    if args.out:
        _write_atomic(args.out, text + "\n")
    else:
        print(text)
    return 0


def cmd_reduce(args):
    algebra = resolve_algebra(args)
    if not args.poly:
        raise PreconditionError("--poly <literal> is required for reduce")
    poly = parse_poly(args.poly, algebra.group, algebra.order)
    reduced, certificate = pauli_reduce(algebra, poly)
    replay_certificate(FreePoly(algebra.group, reduced.order, poly.terms),
                       reduced, certificate)
    out = {
        "input": str(poly),
        "reduced": str(reduced),
        "rounds": len(certificate),
        "steps": sum(len(r["monomials"]) for r in certificate),
        "certificate_replayed": True,
    }
    text = json.dumps(out, indent=2)
    if args.out:
        _write_atomic(args.out, text + "\n")
    else:
        print(text)
    return 0


def cmd_report(args):
    if not args.input:
        raise PreconditionError("report needs an input JSON report file")
    doc = _load_json(args.input)
    if doc.get("format") != "gradedpi-report":
        raise SpecParseError("not a gradedpi-report file")
    lines = ["degrees\torbit\tdim_target\tdim_consequence\tequal\twitness"]
    for r in doc.get("records", []):
        lines.append("%s\t%d\t%d\t%d\t%s\t%s" % (
            ".".join(r["degrees"]) if r["degrees"] else "e", r["orbit"],
            r["dim_target"], r["dim_consequence"],
            "yes" if r["equal"] else "NO", r.get("witness") or ""))
    text = "\n".join(lines)
    if args.out:
        _write_atomic(args.out, text + "\n")
    else:
        print(text)
    return 0


def make_parser():
    parser = argparse.ArgumentParser(
        prog="gradedpi",
        description="Exact verification of graded polynomial identity bases "
                    "for real graded division algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, basis=False):
        p.add_argument("--algebra", help="catalog id (%s; tensor with '@'), or "
                                         "a .json algebra spec file" % ", ".join(catalog_ids()))
        p.add_argument("--n", type=int, help="catalog parameter n")
        p.add_argument("--m", type=int, help="catalog parameter m")
        p.add_argument("--k", type=int, help="catalog parameter k")
        p.add_argument("--l", type=int, help="catalog parameter l")
        p.add_argument("--eps", type=int, help="catalog parameter eps (+1/-1)")
        p.add_argument("--mu", type=int, help="catalog parameter mu (+1/-1)")
        p.add_argument("--nu", type=int, help="catalog parameter nu (+1/-1)")
        p.add_argument("--out", help="output path (written atomically)")
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        if basis:
            p.add_argument("--basis", required=True,
                           help="named basis or a .json generator-set file")
            p.add_argument("--mode", choices=("identities", "centrals"),
                           default="identities")
            p.add_argument("--max-degree", type=int, default=3)
            p.add_argument("--jobs", type=int, default=1)
            p.add_argument("--long-running", action="store_true",
                           help="include the degree-seven check for gradings "
                                "with commutation value i")

    p = sub.add_parser("build", help="construct and validate an algebra")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="membership and completeness of a basis")
    common(p, basis=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("families", help="print a generator family")
    common(p, basis=True)
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("transfer", help="transport a basis along a regular tensor factor")
    common(p, basis=True)
    p.add_argument("--with", dest="with_algebra", help="catalog id of the regular factor")
    p.add_argument("--verify", action="store_true",
                   help="also verify the transferred basis on the tensor product")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("reduce", help="merge repeated degrees with a replayable certificate")
    common(p)
    p.add_argument("--poly", help="polynomial literal to reduce")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("report", help="re-render a JSON report as TSV")
    common(p)
    p.add_argument("--input", help="JSON report file")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print("precondition violated: %s" % exc, file=sys.stderr)
        return 3
    except ResourceRefusal as exc:
        print("resource refusal: %s" % exc, file=sys.stderr)
        return 4
    except VerificationFailure as exc:
        print("verification failure: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
