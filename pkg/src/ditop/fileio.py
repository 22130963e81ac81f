"""Line-oriented text formats for images, maps, homotopies, groups, and
witnesses.

All formats share the same skeleton: UTF-8 text, one record per line,
'#' starts a comment, blank lines are ignored. Parsers complain with the
line number; serializers emit canonical order so that parse/serialize
round-trips are byte-stable.
"""

from __future__ import annotations

import os
from typing import Callable, Optional, Sequence

from .groups import CayleyTable
from .homotopy import HomotopyWitness
from .images import CK, DigitalImage, Explicit, Point
from .maps import DigitalMap


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(fields: Sequence[str], lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in fields)
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(fields)}")


def parse_image(text: str) -> DigitalImage:
    dim: Optional[int] = None
    adjacency = None
    explicit = False
    points: list[Point] = []
    seen: dict[Point, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, fields in _records(text):
        head, rest = fields[0], fields[1:]
        if head == "dim":
            if dim is not None:
                raise ParseError(lineno, "dim given twice")
            if len(rest) != 1:
                raise ParseError(lineno, "dim wants one positive integer")
            (dim,) = _ints(rest, lineno)
            if dim < 1:
                raise ParseError(lineno, "dim wants one positive integer")
        elif head == "adjacency":
            if len(rest) != 1:
                raise ParseError(lineno, "adjacency wants one word")
            word = rest[0]
            if word == "explicit":
                explicit = True
            elif word.startswith("c") and word[1:].isdigit():
                adjacency = CK(int(word[1:]))
            else:
                raise ParseError(lineno, f"unknown adjacency {word!r} "
                                         f"(use c<k> or explicit)")
        elif head == "point":
            if dim is None:
                raise ParseError(lineno, "point before dim")
            if len(rest) != dim:
                raise ParseError(lineno, f"point wants {dim} coordinates")
            p = _ints(rest, lineno)
            if p in seen:
                raise ParseError(lineno, f"duplicate point {p} "
                                         f"(first at line {seen[p]})")
            seen[p] = lineno
            points.append(p)
        elif head == "edge":
            if not explicit:
                raise ParseError(lineno, "edge lines need adjacency explicit")
            if len(rest) != 2:
                raise ParseError(lineno, "edge wants two point indices")
            i, j = _ints(rest, lineno)
            if not (0 <= i < len(points) and 0 <= j < len(points)):
                raise ParseError(lineno, f"edge {i} {j} is out of range "
                                         f"({len(points)} points so far)")
            if i == j:
                raise ParseError(lineno, "edge cannot join a point to itself")
            edges.append((i, j))
        else:
            raise ParseError(lineno, f"unknown record {head!r}")
    if dim is None:
        raise ParseError(1, "missing dim")
    if explicit:
        pairs = {(points[i], points[j]) for i, j in edges}
        return DigitalImage(points, Explicit.of(pairs))
    if adjacency is None:
        raise ParseError(1, "missing adjacency")
    return DigitalImage(points, adjacency)


def serialize_image(img: DigitalImage) -> str:
    lines = [f"dim {img.dim}"]
    if isinstance(img.adjacency, CK):
        lines.append(f"adjacency c{img.adjacency.k}")
    elif isinstance(img.adjacency, Explicit):
        lines.append("adjacency explicit")
    else:
        raise ValueError(f"cannot serialize adjacency {img.adjacency!r}; "
                         f"only c<k> and explicit edge lists have a file form")
    for p in img.points:
        lines.append("point " + " ".join(str(c) for c in p))
    if isinstance(img.adjacency, Explicit):
        for i, j in img.edge_index_pairs:
            lines.append(f"edge {i} {j}")
    return "\n".join(lines) + "\n"


Resolver = Callable[[str], DigitalImage]


def _file_resolver(base_dir: str) -> Resolver:
    def resolve(ref: str) -> DigitalImage:
        if ref.startswith("corpus:"):
            from .corpus import get_image
            return get_image(ref[len("corpus:"):])
        path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
        with open(path, encoding="utf-8") as fh:
            return parse_image(fh.read())
    return resolve


def parse_map(text: str, resolve: Resolver) -> DigitalMap:
    body = list(_records(text))
    if not body or body[0][1][0] != "map":
        raise ParseError(body[0][0] if body else 1,
                         "map file starts with: map <domain> <codomain>")
    lineno, fields = body[0]
    if len(fields) != 3:
        raise ParseError(lineno, "map wants two image references")
    domain = resolve(fields[1])
    codomain = resolve(fields[2])
    assignment: dict[Point, Point] = {}
    for lineno, fields in body[1:]:
        if fields[0] != "pair":
            raise ParseError(lineno, f"unknown record {fields[0]!r} in map file")
        rest = fields[1:]
        if "->" not in rest:
            raise ParseError(lineno, "pair wants: pair <coords> -> <coords>")
        cut = rest.index("->")
        src = _ints(rest[:cut], lineno)
        dst = _ints(rest[cut + 1:], lineno)
        if len(src) != domain.dim:
            raise ParseError(lineno, f"left side wants {domain.dim} coordinates")
        if len(dst) != codomain.dim:
            raise ParseError(lineno, f"right side wants {codomain.dim} coordinates")
        if src in assignment:
            raise ParseError(lineno, f"{src} assigned twice")
        assignment[src] = dst
    missing = [p for p in domain.points if p not in assignment]
    if missing:
        raise ParseError(lineno if body[1:] else 1,
                         f"no value for domain point {missing[0]}")
    extra = [p for p in assignment if p not in domain]
    if extra:
        raise ParseError(1, f"{extra[0]} is not a domain point")
    return DigitalMap.from_mapping(domain, codomain, assignment)


def serialize_map(dm: DigitalMap, domain_ref: str, codomain_ref: str) -> str:
    lines = [f"map {domain_ref} {codomain_ref}"]
    for p, q in zip(dm.domain.points, dm.values):
        lines.append("pair " + " ".join(str(c) for c in p) + " -> "
                     + " ".join(str(c) for c in q))
    return "\n".join(lines) + "\n"


def parse_homotopy(text: str, resolve: Resolver) -> HomotopyWitness:
    body = list(_records(text))
    if not body or body[0][1][0] != "stages":
        raise ParseError(body[0][0] if body else 1,
                         "homotopy file starts with: stages <count>")
    lineno, fields = body[0]
    (count,) = _ints(fields[1:], lineno)
    if count < 1:
        raise ParseError(lineno, "a homotopy has at least one stage")
    blocks: list[list[tuple[int, list[str]]]] = []
    for lineno, fields in body[1:]:
        if fields[0] == "map":
            blocks.append([])
        if not blocks:
            raise ParseError(lineno, "stage records before the first map header")
        blocks[-1].append((lineno, fields))
    if len(blocks) != count:
        raise ParseError(body[0][0],
                         f"stages {count} but found {len(blocks)} map blocks")
    stages = []
    for block in blocks:
        block_text = "\n".join(" ".join(fields) for _, fields in block)
        try:
            stages.append(parse_map(block_text, resolve))
        except ParseError as err:
            # map the block-relative line back to the file
            raise ParseError(block[min(err.line, len(block)) - 1][0],
                             str(err).split(": ", 1)[1]) from None
    return HomotopyWitness(tuple(stages))


def serialize_homotopy(w: HomotopyWitness, domain_ref: str,
                       codomain_ref: str) -> str:
    parts = [f"stages {len(w.stages)}"]
    for stage in w.stages:
        parts.append(serialize_map(stage, domain_ref, codomain_ref).rstrip("\n"))
    return "\n".join(parts) + "\n"


def parse_group(text: str, resolve: Resolver) -> CayleyTable:
    body = list(_records(text))
    if not body or body[0][1][0] != "group":
        raise ParseError(body[0][0] if body else 1,
                         "group file starts with: group <image>")
    lineno, fields = body[0]
    if len(fields) != 2:
        raise ParseError(lineno, "group wants one image reference")
    img = resolve(fields[1])
    d = img.dim
    n = len(img.points)
    identity: Optional[Point] = None
    rows: dict[Point, tuple[Point, ...]] = {}
    for lineno, fields in body[1:]:
        head, rest = fields[0], fields[1:]
        if head == "identity":
            if identity is not None:
                raise ParseError(lineno, "identity given twice")
            if len(rest) != d:
                raise ParseError(lineno, f"identity wants {d} coordinates")
            identity = _ints(rest, lineno)
        elif head == "row":
            if ":" not in rest:
                raise ParseError(lineno, "row wants: row <coords> : <products>")
            cut = rest.index(":")
            left = _ints(rest[:cut], lineno)
            if len(left) != d:
                raise ParseError(lineno, f"row point wants {d} coordinates")
            if left not in img:
                raise ParseError(lineno, f"{left} is not a carrier point")
            if left in rows:
                raise ParseError(lineno, f"row {left} given twice")
            flat = _ints(rest[cut + 1:], lineno)
            if len(flat) != n * d:
                raise ParseError(lineno, f"row wants {n} products of {d} "
                                         f"coordinates each")
            rows[left] = tuple(flat[k * d:(k + 1) * d] for k in range(n))
        else:
            raise ParseError(lineno, f"unknown record {head!r} in group file")
    if identity is None:
        raise ParseError(1, "missing identity")
    missing = [p for p in img.points if p not in rows]
    if missing:
        raise ParseError(1, f"missing row for {missing[0]}")
    entries = tuple(rows[p] for p in img.points)
    return CayleyTable(img, identity, entries)


def serialize_group(table: CayleyTable, image_ref: str) -> str:
    lines = [f"group {image_ref}",
             "identity " + " ".join(str(c) for c in table.identity)]
    for p, row in zip(table.image.points, table.entries):
        flat = " ".join(str(c) for q in row for c in q)
        lines.append("row " + " ".join(str(c) for c in p) + " : " + flat)
    return "\n".join(lines) + "\n"


def serialize_cover(pieces: Sequence[Sequence[Point]]) -> str:
    """Subset-only witness: the pieces of a cover, point lists."""
    lines = [f"cover {len(pieces)}"]
    for piece in pieces:
        lines.append(f"piece {len(piece)}")
        for p in piece:
            lines.append("point " + " ".join(str(c) for c in p))
    return "\n".join(lines) + "\n"


def parse_cover(text: str) -> list[tuple[Point, ...]]:
    body = list(_records(text))
    if not body or body[0][1][0] != "cover":
        raise ParseError(body[0][0] if body else 1,
                         "cover file starts with: cover <count>")
    pieces: list[list[Point]] = []
    want: list[int] = []
    for lineno, fields in body[1:]:
        head, rest = fields[0], fields[1:]
        if head == "piece":
            (k,) = _ints(rest, lineno)
            pieces.append([])
            want.append(k)
        elif head == "point":
            if not pieces:
                raise ParseError(lineno, "point before the first piece")
            pieces[-1].append(_ints(rest, lineno))
        else:
            raise ParseError(lineno, f"unknown record {head!r} in cover file")
    for k, piece in zip(want, pieces):
        if k != len(piece):
            raise ParseError(1, f"piece announced {k} points, lists {len(piece)}")
    return [tuple(piece) for piece in pieces]


def serialize_sections(witnesses, n: int, m: int) -> str:
    """Section witnesses: per piece, each point with its n arm paths."""
    lines = [f"sections {len(witnesses)} arms {n} length {m}"]
    for sw in witnesses:
        lines.append(f"piece {len(sw.piece)}")
        for u, wedge in zip(sw.piece, sw.wedges):
            lines.append("at " + " ".join(str(c) for c in u))
            for arm in wedge:
                lines.append("arm " + " | ".join(
                    " ".join(str(c) for c in p) for p in arm))
    return "\n".join(lines) + "\n"


def parse_sections(text: str):
    """Returns (n, m, pieces) where each piece is a list of
    (endpoint tuple, wedge); inverse of serialize_sections."""
    from .complexity import SectionWitness
    body = list(_records(text))
    if not body or body[0][1][0] != "sections":
        raise ParseError(body[0][0] if body else 1,
                         "sections file starts with: sections <count> arms "
                         "<n> length <m>")
    lineno, fields = body[0]
    if len(fields) != 6 or fields[2] != "arms" or fields[4] != "length":
        raise ParseError(lineno, "header wants: sections <count> arms <n> "
                                 "length <m>")
    n = int(fields[3])
    m = int(fields[5])
    pieces: list[tuple[list, list]] = []
    arms_open: list = []
    for lineno, fields in body[1:]:
        head, rest = fields[0], fields[1:]
        if head == "piece":
            pieces.append(([], []))
            arms_open = []
        elif head == "at":
            if not pieces:
                raise ParseError(lineno, "at before the first piece")
            if arms_open and len(arms_open) != n:
                raise ParseError(lineno, f"previous point has {len(arms_open)} "
                                         f"arms, wants {n}")
            arms_open = []
            pieces[-1][0].append(_ints(rest, lineno))
            pieces[-1][1].append(arms_open)
        elif head == "arm":
            if not pieces or not pieces[-1][0]:
                raise ParseError(lineno, "arm before any at record")
            chunks = " ".join(rest).split("|")
            arm = tuple(_ints(chunk.split(), lineno) for chunk in chunks)
            if len(arm) != m + 1:
                raise ParseError(lineno, f"arm wants {m + 1} points")
            arms_open.append(arm)
        else:
            raise ParseError(lineno, f"unknown record {head!r} in sections file")
    out = []
    for pts, wedges in pieces:
        out.append(SectionWitness(tuple(pts),
                                  tuple(tuple(w) for w in wedges)))
    return n, m, out


def load_image(path: str) -> DigitalImage:
    with open(path, encoding="utf-8") as fh:
        return parse_image(fh.read())


def load_map(path: str) -> DigitalMap:
    with open(path, encoding="utf-8") as fh:
        return parse_map(fh.read(), _file_resolver(os.path.dirname(path) or "."))


def load_homotopy(path: str) -> HomotopyWitness:
    with open(path, encoding="utf-8") as fh:
        return parse_homotopy(fh.read(),
                              _file_resolver(os.path.dirname(path) or "."))


def load_group(path: str) -> CayleyTable:
    with open(path, encoding="utf-8") as fh:
        return parse_group(fh.read(), _file_resolver(os.path.dirname(path) or "."))
