"""Command-line front end.

Usage examples::

    toric-entropy info --torus 4
    toric-entropy entropy --torus 4 --region rect:0,0,2,2
    toric-entropy sweep --torus 8 --sizes 1x1,2x2,3x3
    toric-entropy oracle --torus 2 --region chain:row,0
    toric-entropy verify --surface cube.json
    toric-entropy degeneracy --torus 5

Every command writes a single JSON object (or CSV with ``--format csv``) to
stdout.  Exit status: 0 success, 1 argument or validation error, 2 resource
limit, 3 engine/oracle mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Sequence

from . import engine, oracle, regions
from .errors import (
    ArgumentError,
    ResourceLimitError,
    StructuralError,
    ToricEntropyError,
    UnsupportedOperationError,
    ValidationError,
)
from .gf2 import DEFAULT_ENUMERATION_LIMIT, in_rowspace
from .regions import Region
from .surface import (
    TORUS,
    Surface,
    build_torus,
    degeneracy_from_ranks,
    genus_and_degeneracy,
    ladder_operators,
    load_surface,
    surface_checks,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RESOURCE = 2
EXIT_MISMATCH = 3

MATCH_TOL = 1e-9


class RegionSyntaxError(ArgumentError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _SpecParser:
    """Recursive-descent parser for the region grammar; whitespace is ignored."""

    def __init__(self, text: str, s: Surface):
        self.text = text
        self.s = s
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, ch: str) -> None:
        if self._peek() != ch:
            found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
            raise RegionSyntaxError(f"expected {ch!r}, found {found}", self.pos)
        self.pos += 1

    def _word(self) -> str:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if start == self.pos:
            raise RegionSyntaxError("expected a keyword", start)
        return self.text[start : self.pos]

    def _int(self) -> int:
        self._skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        token = self.text[start : self.pos]
        if token in ("", "-"):
            raise RegionSyntaxError("expected an integer", start)
        return int(token)

    def _ints(self, count: int | None) -> list[int]:
        values = [self._int()]
        while self._peek() == ",":
            self.pos += 1
            values.append(self._int())
        if count is not None and len(values) != count:
            raise RegionSyntaxError(f"expected {count} integers, got {len(values)}", self.pos)
        return values

    def parse(self) -> Region:
        region = self._spec()
        self._skip()
        if self.pos != len(self.text):
            raise RegionSyntaxError(f"unexpected trailing {self.text[self.pos]!r}", self.pos)
        return region

    def _spec(self) -> Region:
        start = self.pos
        keyword = self._word()
        if keyword == "not":
            self._expect("(")
            inner = self._spec()
            self._expect(")")
            return inner.complement()
        self._expect(":")
        if keyword == "rect":
            i0, j0, a, b = self._ints(4)
            return regions.rect_region(self.s, i0, j0, a, b)
        if keyword == "chain":
            orientation = self._word()
            if orientation not in ("row", "col"):
                raise RegionSyntaxError(f"chain orientation must be 'row' or 'col', not {orientation!r}", start)
            self._expect(",")
            return regions.chain_region(self.s, orientation, self._int())
        if keyword == "orient":
            which = self._word()
            if which not in ("v", "h"):
                raise RegionSyntaxError(f"orientation must be 'v' or 'h', not {which!r}", start)
            return regions.orientation_region(self.s, which)
        if keyword == "links":
            return regions.links_region(self.s, self._ints(None))
        raise RegionSyntaxError(f"unknown region kind {keyword!r}", start)


def parse_region_spec(text: str, s: Surface) -> Region:
    """Parse ``rect:i0,j0,a,b | chain:(row|col),n | orient:(v|h) | links:... | not(...)``."""
    return _SpecParser(text, s).parse()


def format_region_spec(r: Region) -> str:
    return regions.canonical_label(r)


def _round(x: Any) -> Any:
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            return x
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return x


def _emit_json(obj: dict[str, Any], out) -> None:
    out.write(json.dumps(_round(obj)) + "\n")


def _emit_csv(header: Sequence[str], rows: Sequence[Sequence[Any]], out) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(_round(list(row)))
    out.write(buf.getvalue())


def _emit(obj: dict[str, Any], fmt: str, out) -> None:
    if fmt == "csv":
        _emit_csv(list(obj), [list(obj.values())], out)
    else:
        _emit_json(obj, out)


def _surface(args) -> Surface:
    if args.torus is not None:
        return build_torus(args.torus)
    with open(args.surface) as fh:
        text = fh.read()
    return load_surface(text, validate=args.command != "verify")


def _amplitudes(text: str | None) -> tuple[complex, ...]:
    if text is None:
        return (1.0, 0.0, 0.0, 0.0)
    try:
        values = tuple(complex(part.strip().replace("i", "j")) for part in text.split(","))
    except ValueError as exc:
        raise ArgumentError(f"cannot parse amplitudes {text!r}: {exc}") from exc
    if len(values) != 4:
        raise ArgumentError(f"expected 4 amplitudes a00,a01,a10,a11, got {len(values)}")
    return values


def _sizes(text: str | None, s: Surface) -> list[tuple[int, int]]:
    if text is None:
        if s.k is None:
            raise ArgumentError("sweep needs a torus surface")
        return [(n, n) for n in range(1, s.k)]
    sizes = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            a, b = (int(x) for x in part.lower().split("x"))
        except ValueError as exc:
            raise ArgumentError(f"size {part!r} is not of the form AxB") from exc
        sizes.append((a, b))
    return sizes


def _cmd_info(args, s: Surface, out) -> int:
    genus, degeneracy = genus_and_degeneracy(s)
    _emit(
        {
            "kind": s.kind,
            "k": s.k,
            "n_sites": s.n_sites,
            "n_links": s.n_links,
            "n_faces": s.n_faces,
            "euler_characteristic": s.euler_characteristic,
            "genus": genus,
            "degeneracy": degeneracy,
        },
        args.format,
        out,
    )
    return EXIT_OK


def _cmd_entropy(args, s: Surface, out) -> int:
    region = parse_region_spec(args.region, s)
    _emit(engine.group_stats(s, region).to_dict(), args.format, out)
    return EXIT_OK


def _cmd_sweep(args, s: Surface, out) -> int:
    rows = engine.sweep_rectangles(s, _sizes(args.sizes, s), workers=args.workers)
    table = [(r.a, r.b, r.boundary_links, r.entropy_bits) for r in rows]
    if args.format == "json":
        _emit_json({"rows": [dict(zip(engine.SWEEP_HEADER, row)) for row in table]}, out)
    else:
        _emit_csv(engine.SWEEP_HEADER, table, out)
    return EXIT_OK


def _cmd_oracle(args, s: Surface, out) -> int:
    region = parse_region_spec(args.region, s)
    amps = _amplitudes(args.amplitudes)
    psi = oracle.build_ground_state(s, *amps, limit=args.max_group_bits)
    spectrum = oracle.reduced_spectrum(psi, region, max_gram_dim=args.max_gram_dim)
    engine_bits = engine.entanglement_entropy(s, region)
    match = abs(spectrum.entropy_bits - engine_bits) <= MATCH_TOL
    # the engine covers basis states only; a superposition may legitimately differ
    single_sector = sum(1 for a in amps if a != 0) == 1
    _emit(
        {
            "region": format_region_spec(region),
            "eigenvalues": list(spectrum.eigenvalues),
            "entropy_bits": spectrum.entropy_bits,
            "purity": spectrum.purity,
            "flat": spectrum.flat,
            "method": spectrum.method,
            "engine_entropy_bits": engine_bits,
            "match": match,
            "single_sector": single_sector,
        },
        "json",
        out,
    )
    return EXIT_MISMATCH if single_sector and not match else EXIT_OK


def _state_checks(s: Surface, limit: int) -> list[tuple[str, str | None]]:
    results: list[tuple[str, str | None]] = []
    by_ranks = degeneracy_from_ranks(s)
    _, by_genus = genus_and_degeneracy(s)
    results.append(
        ("degeneracy_agreement", None if by_ranks == by_genus else f"ranks give {by_ranks}, Euler gives {by_genus}")
    )
    sectors = oracle.SECTORS if s.kind == TORUS else ((0, 0),)
    supports = []
    for i, j in sectors:
        psi = oracle.sector_state(s, i, j, limit)
        ok = oracle.verify_ground_state(s, psi)
        results.append((f"ground_state_{i}{j}", None if ok else "state is not fixed by every stabilizer"))
        size_ok = len(psi) == 1 << (s.n_sites - 1)
        results.append(
            (f"sector_size_{i}{j}", None if size_ok else f"support has {len(psi)} strings, expected 2^{s.n_sites - 1}")
        )
        supports.append(set(psi.amplitudes))
    if len(supports) > 1:
        disjoint = sum(len(x) for x in supports) == len(set().union(*supports))
        results.append(("sectors_disjoint", None if disjoint else "sector supports overlap"))
    return results


def _ladder_checks(s: Surface) -> list[tuple[str, str | None]]:
    ladders = ladder_operators(s)
    results = []
    for name, w in (("w1", ladders.w1), ("w2", ladders.w2)):
        odd = [p for p, row in enumerate(s.plaquette_incidence) if (row & w).popcount() % 2]
        results.append((f"{name}_commutes", None if not odd else f"odd overlap with plaquette {odd[0]}"))
        contractible = in_rowspace(s.star_matrix, w)
        results.append((f"{name}_noncontractible", "lies in the star row space" if contractible else None))
    return results


def _cmd_verify(args, s: Surface, out) -> int:
    results = surface_checks(s)
    structural_ok = all(f is None for _, f in results)
    if structural_ok and s.kind == TORUS:
        results += _ladder_checks(s)
    if structural_ok and not args.no_states:
        results += _state_checks(s, args.max_group_bits)
    passed = all(f is None for _, f in results)
    if args.format == "csv":
        _emit_csv(("check", "passed", "detail"), [(n, f is None, f or "") for n, f in results], out)
    else:
        checks = [{"name": n, "passed": f is None, "detail": f} for n, f in results]
        _emit_json({"passed": passed, "checks": checks}, out)
    return EXIT_OK if passed else EXIT_INVALID


def _cmd_degeneracy(args, s: Surface, out) -> int:
    _, degeneracy = genus_and_degeneracy(s)
    _emit({"degeneracy": degeneracy}, args.format, out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ArgumentError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toric-entropy", description="Ground-state entanglement in the toric code.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser, formats=("json", "csv"), default="json"):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--torus", type=int, metavar="K", help="k x k square torus")
        src.add_argument("--surface", metavar="PATH", help="surface document (JSON)")
        p.add_argument("--format", choices=formats, default=default)

    common(sub.add_parser("info", help="surface counts, genus and degeneracy"))
    p = sub.add_parser("entropy", help="exact entropy from GF(2) ranks")
    common(p)
    p.add_argument("--region", required=True)
    p = sub.add_parser("sweep", help="entropy of a family of rectangles")
    common(p, default="csv")
    p.add_argument("--sizes", help="comma-separated AxB list (default: 1x1 .. (k-1)x(k-1))")
    p.add_argument("--workers", type=int, default=1)
    p = sub.add_parser("oracle", help="brute-force spectrum with engine cross-check")
    common(p, formats=("json",))
    p.add_argument("--region", required=True)
    p.add_argument("--amplitudes", help="a00,a01,a10,a11 (complex allowed, e.g. 0.5+0.5j)")
    p.add_argument("--max-group-bits", type=int, default=DEFAULT_ENUMERATION_LIMIT)
    p.add_argument("--max-gram-dim", type=int, default=oracle.DEFAULT_GRAM_LIMIT)
    p = sub.add_parser("verify", help="check surface and ground-state invariants")
    common(p)
    p.add_argument("--max-group-bits", type=int, default=DEFAULT_ENUMERATION_LIMIT)
    p.add_argument("--no-states", action="store_true", help="skip the explicit ground-state checks")
    common(sub.add_parser("degeneracy", help="ground-space dimension"))
    return parser


_COMMANDS = {
    "info": _cmd_info,
    "entropy": _cmd_entropy,
    "sweep": _cmd_sweep,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
    "degeneracy": _cmd_degeneracy,
}


_ERROR_KINDS = (
    (RegionSyntaxError, "syntax"),
    (ValidationError, "validation"),
    (UnsupportedOperationError, "unsupported"),
    (ArgumentError, "argument"),
    (StructuralError, "structural"),
    (OSError, "io"),
)


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        s = _surface(args)
        return _COMMANDS[args.command](args, s, out)
    except ResourceLimitError as exc:
        _emit_json({"error": "resource_limit", "detail": str(exc)}, out)
        return EXIT_RESOURCE
    except (ToricEntropyError, OSError) as exc:
        kind = next((name for cls, name in _ERROR_KINDS if isinstance(exc, cls)), "error")
        _emit_json({"error": kind, "detail": str(exc)}, out)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
