"""Text file formats: groups, homomorphisms, cyclotomic representations.

Group file::

    # comment
    perm n=5 name=A5
    (1 2 3)
    (3 4 5)

or ``matq q=3 N=2`` followed by one matrix per line, ``[[1,1],[0,1]]``.

Homomorphism file (paths relative to the file)::

    source: s3.grp
    target: z2.grp
    images:
    ()
    (1 2)

Representation file::

    cyclo p=5 N=2 genus=1 labels=x,y
    [1,0,0,0] [0,1,0,0]
    0 1
    hermitian:
    1 0
    0 1

Each matrix is N consecutive rows of N entries; an entry is a bracketed
coefficient vector of length p-1 or a bare integer.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import perm as P
from .cyclotomic import CycloMatrix, HermitianForm, check_p, cyclo_normalize
from .errors import ParseError
from .groups import FiniteGroup, group_from_matrix_generators, group_from_perm_generators
from .homs import Homomorphism


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _header_fields(line: str) -> tuple[str, dict[str, str]]:
    parts = line.split()
    fields = {}
    for tok in parts[1:]:
        if "=" not in tok:
            raise ParseError(f"bad header token {tok!r}")
        k, v = tok.split("=", 1)
        fields[k] = v
    return parts[0], fields


def _int_field(fields: dict, key: str) -> int:
    try:
        return int(fields[key])
    except KeyError:
        raise ParseError(f"header is missing {key}=") from None
    except ValueError:
        raise ParseError(f"header field {key} is not an integer") from None


def parse_matrix(text: str) -> list[list[int]]:
    try:
        M = json.loads(text)
    except json.JSONDecodeError:
        raise ParseError(f"malformed matrix {text!r}") from None
    if not isinstance(M, list) or not all(isinstance(r, list) and all(isinstance(x, int) for x in r) for r in M):
        raise ParseError(f"matrix must be a list of integer rows: {text!r}")
    return M


def parse_group(text: str, *, name: str | None = None) -> FiniteGroup:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty group file")
    kind, fields = _header_fields(lines[0])
    name = fields.get("name", name)
    if kind == "perm":
        n = _int_field(fields, "n")
        return group_from_perm_generators(n, lines[1:], name=name)
    if kind == "matq":
        q, N = _int_field(fields, "q"), _int_field(fields, "N")
        return group_from_matrix_generators(q, N, [parse_matrix(l) for l in lines[1:]], name=name)
    raise ParseError(f"unknown group kind {kind!r}")


def load_group(path: str | Path) -> FiniteGroup:
    path = Path(path)
    return parse_group(path.read_text(encoding="utf-8"), name=path.stem)


def parse_element(G: FiniteGroup, text: str) -> np.ndarray:
    text = text.strip()
    if G.matrix is not None and text.startswith("["):
        return G.matrix.to_perm(parse_matrix(text))
    return P.parse_cycles(text, G.degree)


def parse_elements(G: FiniteGroup, text: str) -> list[np.ndarray]:
    """Elements separated by ``;``."""
    return [parse_element(G, t) for t in text.split(";") if t.strip()]


def format_element(G: FiniteGroup, g: np.ndarray) -> str:
    if G.matrix is not None:
        return json.dumps(G.matrix.to_matrix(g).tolist(), separators=(",", ":"))
    return P.format_cycles(g)


def format_group(G: FiniteGroup) -> str:
    if G.matrix is not None:
        head = f"matq q={G.matrix.q} N={G.matrix.N}"
    else:
        head = f"perm n={G.degree}"
    if G.name:
        head += f" name={G.name}"
    return "\n".join([head] + [format_element(G, g) for g in G.generators]) + "\n"


def load_hom(path: str | Path) -> Homomorphism:
    path = Path(path)
    lines = _content_lines(path.read_text(encoding="utf-8"))
    src = tgt = None
    images: list[str] = []
    in_images = False
    for line in lines:
        if in_images:
            images.append(line)
        elif line.startswith("source:"):
            src = load_group(path.parent / line.split(":", 1)[1].strip())
        elif line.startswith("target:"):
            tgt = load_group(path.parent / line.split(":", 1)[1].strip())
        elif line.rstrip(":") == "images":
            in_images = True
        elif line == "hom":
            continue
        else:
            raise ParseError(f"unexpected line in hom file: {line!r}")
    if src is None or tgt is None:
        raise ParseError("hom file needs source: and target:")
    return Homomorphism(src, tgt, [parse_element(tgt, t) for t in images], name=path.stem)


# ---------------------------------------------------------------------------
# cyclotomic representation files
# ---------------------------------------------------------------------------


@dataclass
class RepFile:
    p: int
    N: int
    matrices: list[CycloMatrix]
    labels: list[str]
    hermitian: HermitianForm | None = None
    metadata: dict[str, str] = field(default_factory=dict)


_ENTRY_RE = re.compile(r"\[[^\]]*\]|-?\d+")


def _parse_row(line: str, p: int, N: int):
    tokens = _ENTRY_RE.findall(line)
    leftover = _ENTRY_RE.sub("", line).replace(",", " ").strip()
    if leftover or len(tokens) != N:
        raise ParseError(f"expected {N} entries in row {line!r}")
    out = []
    for t in tokens:
        if t.startswith("["):
            try:
                coeffs = [int(x) for x in t[1:-1].replace(",", " ").split()]
            except ValueError:
                raise ParseError(f"bad coefficient vector {t!r}") from None
            if len(coeffs) != p - 1:
                raise ParseError(f"coefficient vector {t!r} must have length {p - 1}")
            out.append(cyclo_normalize(p, coeffs))
        else:
            out.append(cyclo_normalize(p, [int(t)]))
    return tuple(out)


def parse_rep_file(text: str, *, strict: bool = False) -> RepFile:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty representation file")
    kind, fields = _header_fields(lines[0])
    if kind != "cyclo":
        raise ParseError(f"expected a 'cyclo' header, got {kind!r}")
    p, N = _int_field(fields, "p"), _int_field(fields, "N")
    try:
        check_p(p, strict)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if N < 1:
        raise ParseError("N must be positive")
    body = lines[1:]
    herm_rows = None
    if "hermitian:" in body:
        k = body.index("hermitian:")
        body, herm_rows = body[:k], body[k + 1 :]
    if len(body) % N:
        raise ParseError(f"{len(body)} matrix rows is not a multiple of N={N}")
    rows = [_parse_row(l, p, N) for l in body]
    mats = [CycloMatrix(p, tuple(rows[i : i + N])) for i in range(0, len(rows), N)]
    labels = fields["labels"].split(",") if "labels" in fields else [f"g{i + 1}" for i in range(len(mats))]
    if len(labels) != len(mats):
        raise ParseError(f"{len(labels)} labels for {len(mats)} matrices")
    herm = None
    if herm_rows is not None:
        if len(herm_rows) != N:
            raise ParseError("hermitian block must have N rows")
        try:
            herm = HermitianForm(CycloMatrix(p, tuple(_parse_row(l, p, N) for l in herm_rows)))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    meta = {k: v for k, v in fields.items() if k not in ("p", "N", "labels")}
    return RepFile(p, N, mats, labels, herm, meta)


def format_rep_file(rep: RepFile) -> str:
    head = f"cyclo p={rep.p} N={rep.N}"
    for k, v in rep.metadata.items():
        head += f" {k}={v}"
    if rep.matrices:
        head += " labels=" + ",".join(rep.labels)
    out = [head]

    def row(r):
        return " ".join("[" + ",".join(map(str, e.coeffs)) + "]" for e in r)

    for M in rep.matrices:
        out.extend(row(r) for r in M.rows)
    if rep.hermitian is not None:
        out.append("hermitian:")
        out.extend(row(r) for r in rep.hermitian.matrix.rows)
    return "\n".join(out) + "\n"
