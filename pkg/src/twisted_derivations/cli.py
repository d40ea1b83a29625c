"""Command-line front end.

Groups, endomorphisms, and elements arrive as small spec strings
(builtin:s3, inner:[2,3,0], images:{...}, file:path), every computation
is dispatched to the library, and reports leave as deterministic JSON
on stdout with a machine-readable error object on stderr for failures.

Exit codes: 0 success, 2 malformed input, 3 out-of-scope request,
4 a mathematical witness refuted the requested construction.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import __version__
from .derivations import (
    DerivationTable,
    Potential,
    check_leibniz,
    derivation_space,
    inner_space,
    is_inner,
    is_quasi_inner,
    quasi_inner_from_potential,
)
from .errors import LibraryError, SpecError, UnsupportedParameter
from .groups import (
    HeisenbergParams,
    builtin_group,
    identity_endomorphism,
    inner_endomorphism,
    make_endomorphism,
    make_finite_group,
)
from .groupoid import GroupoidView, SubgroupDescription, to_dot
from .structure import (
    heisenberg_central_family,
    structure_report,
    verify_decomposition,
)

DEFAULT_RADIUS = 4

_ALIASES = {
    "trivial": ("cyclic", 1),
    "c2": ("cyclic", 2),
    "c3": ("cyclic", 3),
    "c4": ("cyclic", 4),
    "c6": ("cyclic", 6),
    "s3": ("symmetric", 3),
    "s4": ("symmetric", 4),
    "d4": ("dihedral", 4),
    "q8": ("quaternion8", None),
    "quaternion8": ("quaternion8", None),
    "heisenberg_Z": ("heisenberg_Z", None),
    "heisenberg_z": ("heisenberg_Z", None),
}

_PARAM_FAMILIES = {"cyclic", "dihedral", "symmetric", "heisenberg_mod"}


def _load_json_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}", path=path)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path} is not valid JSON: {exc}", path=path)


def parse_group_spec(spec: str):
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        if name in _ALIASES:
            family, param = _ALIASES[name]
            return builtin_group(family, param)
        for sep in (":", "_"):
            family, _, tail = name.rpartition(sep)
            if family in _PARAM_FAMILIES and re.fullmatch(r"\d+", tail):
                return builtin_group(family, int(tail))
        raise UnsupportedParameter(f"unknown builtin group {name!r}", spec=spec)
    if spec.startswith("file:"):
        obj = _load_json_file(spec[len("file:"):])
        if isinstance(obj, dict) and "cayley" in obj:
            return make_finite_group(obj["cayley"], name=obj.get("name"),
                                     labels=obj.get("labels"))
        if isinstance(obj, dict) and "family" in obj:
            return builtin_group(obj["family"], obj.get("param"))
        raise SpecError("a group file needs a 'cayley' table or a 'family'",
                        path=spec[len("file:"):])
    raise SpecError(
        f"group spec {spec!r} must start with 'builtin:' or 'file:'")


def parse_element(group, token: str):
    token = token.strip()
    if token.startswith("["):
        try:
            value = json.loads(token)
        except json.JSONDecodeError:
            raise SpecError(f"cannot parse element {token!r}")
        return group.element_from_json(value)
    if re.fullmatch(r"-?\d+", token):
        return group.element_from_json(int(token))
    return group.element_from_json(token)


def _split_top(text: str, sep: str):
    """Split on sep at bracket depth zero, so [a,b,c] survives."""
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch in "[{":
            depth += 1
        elif ch in "]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p for p in (part.strip() for part in parts) if p]


def parse_endo_spec(group, spec: str):
    if spec == "id":
        return identity_endomorphism(group)
    if spec.startswith("inner:"):
        return inner_endomorphism(group, parse_element(group, spec[len("inner:"):]))
    if spec.startswith("images:"):
        body = spec[len("images:"):].strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise SpecError(f"images spec needs braces, got {spec!r}")
        images = {}
        for item in _split_top(body[1:-1], ","):
            key, colon, value = _partition_top(item, ":")
            if not colon:
                raise SpecError(f"images entry {item!r} is not key:element")
            images[key.strip()] = value.strip()
        return _endo_from_images(group, images)
    if spec.startswith("file:"):
        obj = _load_json_file(spec[len("file:"):])
        if isinstance(obj, dict) and "inner" in obj:
            return inner_endomorphism(group, group.element_from_json(obj["inner"]))
        if isinstance(obj, dict) and "images" in obj:
            return _endo_from_images(group, obj["images"])
        raise SpecError("an endomorphism file needs 'inner' or 'images'")
    raise SpecError(
        f"endomorphism spec {spec!r} is not id, inner:..., images:{{...}}, "
        "or file:...")


def _partition_top(text: str, sep: str):
    depth = 0
    for i, ch in enumerate(text):
        if ch in "[{":
            depth += 1
        elif ch in "]}":
            depth -= 1
        elif ch == sep and depth == 0:
            return text[:i], sep, text[i + 1:]
    return text, "", ""


def _endo_from_images(group, images: dict):
    generators = {group.label(g): g for g in group.generators}
    resolved = {}
    for key, value in images.items():
        if key not in generators:
            raise SpecError(
                f"{key!r} is not a generator of {group.name}; "
                f"generators are {sorted(generators)}")
        if isinstance(value, str):
            resolved[generators[key]] = parse_element(group, value)
        else:
            resolved[generators[key]] = group.element_from_json(value)
    return make_endomorphism(group, resolved)


# -- report plumbing ---------------------------------------------------------


def _resolve_radius(group, args, command):
    if group.kind == "finite":
        return None
    if args.radius is not None:
        return args.radius
    if command == "groupoid-export":
        # exports are size-sensitive; make the truncation an explicit choice
        from .errors import NotSupportedForScope
        raise NotSupportedForScope(
            "groupoid-export on heisenberg_Z needs an explicit --radius",
            group=group.name)
    return DEFAULT_RADIUS


def _job(args, command, group, radius, extras=None):
    job = {
        "command": command,
        "group": args.group,
        "group_name": group.name,
        "sigma": args.sigma,
        "tau": args.tau,
        "radius": radius,
        "seed": args.seed,
    }
    if extras:
        job.update(extras)
    return job


def _report(args, job, body):
    report = {"tool_version": __version__, "job": job}
    report.update(body)
    return report


def _emit(args, text: str):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(args, report: dict) -> str:
    if args.format == "text":
        lines = [f"{key}: {json.dumps(value, default=str)}"
                 for key, value in report.items()]
        return "\n".join(lines) + "\n"
    return json.dumps(report, indent=2, default=str) + "\n"


def _element_json(group, g):
    return group.element_to_json(g)


def _center_json(group, center):
    if isinstance(center, SubgroupDescription):
        return center.to_json()
    return [_element_json(group, z) for z in center]


def _class_body(view, cls):
    group = view.group
    return {
        "representative": _element_json(group, cls.representative),
        "size": len(cls.elements),
        "truncated": cls.truncated,
        "elements": [_element_json(group, g) for g in cls.elements],
    }


# -- commands ----------------------------------------------------------------


def cmd_group_info(args, group, sigma, tau, radius):
    report = structure_report(group, sigma, tau, radius=radius)
    return report.to_json()


def cmd_classes(args, group, sigma, tau, radius):
    view = GroupoidView(group, sigma, tau, radius=radius)
    if args.element is not None:
        cls = view.conjugacy_class(parse_element(group, args.element))
        return _class_body(view, cls)
    classes = [view.conjugacy_class(component[0])
               for component in view.components()]
    return {
        "count": len(classes),
        "sizes": sorted(len(cls.elements) for cls in classes),
        "classes": [_class_body(view, cls) for cls in classes],
    }


def cmd_centralizers(args, group, sigma, tau, radius):
    view = GroupoidView(group, sigma, tau, radius=radius)

    def entry(u):
        z = view.centralizer(u)
        body = {"element": _element_json(group, u)}
        if isinstance(z, SubgroupDescription):
            body["centralizer"] = z.to_json()
        else:
            body["order"] = len(z)
            body["elements"] = [_element_json(group, w) for w in z]
        return body

    if args.element is not None:
        return entry(parse_element(group, args.element))
    return {"centralizers": [entry(component[0])
                             for component in view.components()]}


def cmd_center(args, group, sigma, tau, radius):
    view = GroupoidView(group, sigma, tau, radius=radius)
    center = view.center()
    body = {"center": _center_json(group, center)}
    if not isinstance(center, SubgroupDescription):
        body["order"] = len(center)
    return body


def cmd_groupoid_export(args, group, sigma, tau, radius):
    view = GroupoidView(group, sigma, tau, radius=radius)
    return to_dot(view)


def cmd_derivations(args, group, sigma, tau, radius):
    action = args.action
    if action == "dim":
        space = derivation_space(group, sigma, tau)
        inner = inner_space(group, sigma, tau)
        return {"dimension": space["dimension"],
                "inner_dimension": inner["dimension"]}
    if action == "basis":
        space = derivation_space(group, sigma, tau)
        return {"dimension": space["dimension"],
                "basis": [D.to_json() for D in space["basis"]]}
    if action == "check-inner":
        if not args.derivation:
            raise SpecError("check-inner needs --derivation <file>")
        D = _validated_table(group, sigma, tau, args.derivation, radius)
        result = is_inner(D)
        witness = result["witness"]
        return {
            "is_inner": result["is_inner"],
            "witness": witness.to_json() if witness is not None else None,
            "kernel_dimension": result["kernel_dimension"],
        }
    if action == "verify-decomposition":
        return verify_decomposition(group, sigma, tau)
    if action == "quasi-inner":
        scope = group.ball(radius) if group.kind == "heisenberg_Z" else None
        if args.potential:
            blob = _load_json_file(args.potential)
            if not isinstance(blob, dict) or "values" not in blob:
                raise SpecError(
                    f"{args.potential} is not a potential file: "
                    "expected a 'values' list", path=args.potential)
            P = Potential.from_json(group, blob)
            D = quasi_inner_from_potential(P, sigma, tau)
            result = is_quasi_inner(D, scope=scope)
            body = {"derivation": D.to_json(scope=scope)}
        elif args.derivation:
            D = _validated_table(group, sigma, tau, args.derivation, radius)
            result = is_quasi_inner(D, scope=scope)
            body = {}
        else:
            raise SpecError("quasi-inner needs --potential or --derivation")
        witness = result["loop_witness"]
        body["quasi_inner"] = result["quasi_inner"]
        body["loop_witness"] = (
            None if witness is None else
            [_element_json(group, witness[0]), _element_json(group, witness[1])])
        return body
    if action == "central":
        return _cmd_central(args, group, sigma, tau, radius)
    raise SpecError(f"unknown derivations action {action!r}")


def _validated_table(group, sigma, tau, path, radius):
    """Load a derivation file and refuse it unless Leibniz holds.

    Tables arrive claiming to be derivations; a violation is a
    mathematical refutation of that claim, reported with the witness
    pair rather than silently classified.
    """
    from .errors import NotADerivation
    obj = _load_json_file(path)
    if not isinstance(obj, dict) or "D" not in obj:
        raise SpecError(f"{path} is not a derivation file: expected a 'D' table",
                        path=path)
    D = DerivationTable.from_json(group, sigma, tau, obj)
    pairs = None
    if group.kind == "heisenberg_Z":
        scope = group.ball(radius)
        in_scope = set(scope)
        pairs = [(g2, g1) for g2 in scope for g1 in scope
                 if (g2 * g1) in in_scope]
    leibniz = check_leibniz(D, pairs=pairs)
    if not leibniz["ok"]:
        g2, g1, _lhs, _rhs = leibniz["violations"][0]
        raise NotADerivation(
            f"{path} violates the Leibniz rule",
            witness=[group.label(g2), group.label(g1)])
    return D


def _cmd_central(args, group, sigma, tau, radius):
    if group.kind != "heisenberg_Z":
        raise UnsupportedParameter(
            "the central-derivation family is defined on heisenberg_Z",
            group=group.name)
    if args.params is None:
        raise SpecError("central needs --params sigma_a,sigma_b,sigma_c,tau_c")
    pieces = args.params.split(",")
    if len(pieces) != 4:
        raise SpecError(f"--params needs four integers, got {args.params!r}")
    try:
        sigma_a, sigma_b, sigma_c, tau_c = (int(p) for p in pieces)
    except ValueError:
        raise SpecError(f"--params needs four integers, got {args.params!r}")
    params = HeisenbergParams(sigma_a, sigma_b, sigma_c, tau_c)
    D = heisenberg_central_family(params, args.mu, args.nu, args.r, group=group)
    ball = group.ball(args.check_radius)
    pairs = [(g2, g1) for g2 in ball for g1 in ball]
    leibniz = check_leibniz(D, pairs=pairs)
    quasi = is_quasi_inner(D, scope=ball)
    witness = quasi["loop_witness"]
    return {
        "params": [sigma_a, sigma_b, sigma_c, tau_c],
        "mu": args.mu,
        "nu": args.nu,
        "r": args.r,
        "check_radius": args.check_radius,
        "pairs_checked": len(pairs),
        "leibniz_ok": leibniz["ok"],
        "quasi_inner": quasi["quasi_inner"],
        "loop_witness": (
            None if witness is None else
            [_element_json(group, witness[0]), _element_json(group, witness[1])]),
    }


# -- parser ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SpecError(f"argument error: {message}")


def _add_common(parser, formats=("json", "text")):
    parser.add_argument("--group", required=True,
                        help="builtin:<name> or file:<path>")
    parser.add_argument("--sigma", default="id",
                        help="id | inner:<element> | images:{...} | file:<path>")
    parser.add_argument("--tau", default="id",
                        help="id | inner:<element> | images:{...} | file:<path>")
    parser.add_argument("--radius", type=int, default=None,
                        help="truncation radius for heisenberg_Z (default 4)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for any sampled checks")
    parser.add_argument("--output", default=None,
                        help="write the report here instead of stdout")
    parser.add_argument("--format", choices=list(formats), default=formats[0])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twisted-derivations",
                     description="exact (sigma,tau)-derivation computations")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group-info", help="structural summary of the pair")
    _add_common(p)

    p = sub.add_parser("classes", help="twisted conjugacy classes")
    _add_common(p)
    p.add_argument("--element", default=None,
                   help="report only the class of this element")

    p = sub.add_parser("centralizers", help="twisted centralizers")
    _add_common(p)
    p.add_argument("--element", default=None,
                   help="report only the centralizer of this element")

    p = sub.add_parser("center", help="the twisted center")
    _add_common(p)

    p = sub.add_parser("derivations", help="derivation-space computations")
    p.add_argument("action", choices=[
        "dim", "basis", "check-inner", "verify-decomposition",
        "quasi-inner", "central"])
    _add_common(p)
    p.add_argument("--derivation", default=None,
                   help="derivation table JSON file")
    p.add_argument("--potential", default=None,
                   help="potential JSON file for quasi-inner")
    p.add_argument("--params", default=None,
                   help="sigma_a,sigma_b,sigma_c,tau_c for central")
    p.add_argument("--mu", type=int, default=0)
    p.add_argument("--nu", type=int, default=0)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--check-radius", dest="check_radius", type=int, default=3)

    p = sub.add_parser("groupoid-export", help="render the groupoid")
    _add_common(p, formats=("dot",))

    return parser


_HANDLERS = {
    "group-info": cmd_group_info,
    "classes": cmd_classes,
    "centralizers": cmd_centralizers,
    "center": cmd_center,
    "derivations": cmd_derivations,
    "groupoid-export": cmd_groupoid_export,
}


def _extras(args):
    out = {}
    if getattr(args, "action", None):
        out["action"] = args.action
    if getattr(args, "element", None) is not None:
        out["element"] = args.element
    for name in ("derivation", "potential", "params"):
        if getattr(args, name, None):
            out[name] = getattr(args, name)
    if getattr(args, "action", None) == "central":
        out.update(mu=args.mu, nu=args.nu, r=args.r,
                   check_radius=args.check_radius)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        group = parse_group_spec(args.group)
        sigma = parse_endo_spec(group, args.sigma)
        tau = parse_endo_spec(group, args.tau)
        radius = _resolve_radius(group, args, args.command)
        body = _HANDLERS[args.command](args, group, sigma, tau, radius)
        if args.command == "groupoid-export":
            job = _job(args, args.command, group, radius)
            header = (f"// tool_version: {__version__}\n"
                      f"// job: {json.dumps(job, sort_keys=True)}\n")
            _emit(args, header + body)
        else:
            report = _report(args, _job(args, args.command, group, radius,
                                        _extras(args)), body)
            _emit(args, _render(args, report))
        return 0
    except LibraryError as exc:
        sys.stderr.write(json.dumps(exc.to_json(), default=str) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
