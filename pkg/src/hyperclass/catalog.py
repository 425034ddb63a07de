"""Named group families, the group-spec mini-language, group files and the corpus.

Spec grammar (whitespace ignored)::

    spec    := factor ("x" factor)*          # left-associative direct product
    factor  := "C"n | "D"m | "Q8" | "S"n | "A"n | "(" spec ")" | "file:" path

``Dm`` is the dihedral group of order ``m``.  A ``file:`` spec must be the whole
spec, since paths may contain ``x``.

Generator order is part of the contract because element ids follow it:

* ``Cn``: the n-cycle ``i -> i+1`` (none for n = 1);
* ``D2n`` (n >= 3): rotation ``x: i -> i+1`` then reflection ``y: i -> -i`` on n points;
  D4 is the Klein group on 4 points and D2 a transposition on 2 points;
* ``Q8``: right-regular ``i`` then ``j`` on 8 points;
* ``Sn``: the n-cycle then ``(0 1)``; ``An``: the 3-cycles ``(0 1 k)``;
* ``AxB``: generators of A on the first block, then those of B shifted past it.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .core import ElementSubset, FiniteGroup, Permutation, close_generators, generate
from .errors import FormatError, NotNormal, NotSubgroupOfGroup, ParseError


@dataclass(frozen=True)
class GroupSpec:
    kind: str  # cyclic | dihedral | quaternion | symmetric | alternating | direct_product | file
    n: int = 0
    left: GroupSpec | None = None
    right: GroupSpec | None = None
    path: str = ""

    def __str__(self) -> str:
        if self.kind == "cyclic":
            return f"C{self.n}"
        if self.kind == "dihedral":
            return f"D{self.n}"
        if self.kind == "quaternion":
            return "Q8"
        if self.kind == "symmetric":
            return f"S{self.n}"
        if self.kind == "alternating":
            return f"A{self.n}"
        if self.kind == "file":
            return f"file:{self.path}"
        right = str(self.right)
        if self.right.kind == "direct_product":
            right = f"({right})"
        return f"{self.left}x{right}"

    @property
    def is_product(self) -> bool:
        return self.kind == "direct_product"


_ATOM = re.compile(r"(C|D|S|A)(\d+)|Q8")


def parse_spec(text: str) -> GroupSpec:
    text = text.strip()
    if text.startswith("file:"):
        if len(text) == 5:
            raise ParseError("empty file path")
        return GroupSpec("file", path=text[5:])
    src = re.sub(r"\s+", "", text)
    if not src:
        raise ParseError("empty group spec")
    spec, pos = _parse_product(src, 0)
    if pos != len(src):
        raise ParseError(f"unexpected {src[pos:]!r} in group spec {text!r}")
    return spec


def _parse_product(src: str, pos: int) -> tuple[GroupSpec, int]:
    spec, pos = _parse_factor(src, pos)
    while pos < len(src) and src[pos] == "x":
        right, pos = _parse_factor(src, pos + 1)
        spec = GroupSpec("direct_product", left=spec, right=right)
    return spec, pos


def _parse_factor(src: str, pos: int) -> tuple[GroupSpec, int]:
    if pos < len(src) and src[pos] == "(":
        spec, pos = _parse_product(src, pos + 1)
        if pos >= len(src) or src[pos] != ")":
            raise ParseError(f"unbalanced parenthesis in {src!r}")
        return spec, pos + 1
    m = _ATOM.match(src, pos)
    if not m:
        raise ParseError(f"cannot parse group at {src[pos:]!r}")
    if m.group(0) == "Q8":
        return GroupSpec("quaternion", 8), m.end()
    letter, n = m.group(1), int(m.group(2))
    if letter == "C":
        if n < 1:
            raise ParseError("cyclic order must be >= 1")
        return GroupSpec("cyclic", n), m.end()
    if letter == "D":
        if n < 2 or n % 2:
            raise ParseError(f"dihedral order must be even and >= 2, got {n}")
        return GroupSpec("dihedral", n), m.end()
    if n < 1:
        raise ParseError(f"{letter}{n}: degree must be >= 1")
    kind = "symmetric" if letter == "S" else "alternating"
    return GroupSpec(kind, n), m.end()


def _as_spec(spec: GroupSpec | str) -> GroupSpec:
    return parse_spec(spec) if isinstance(spec, str) else spec


def _quaternion_gens() -> list[Permutation]:
    # points: 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
    units = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
             ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
             ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
    names = ["1", "i", "j", "k"]

    def point(sign: int, unit: str) -> int:
        return 2 * names.index(unit) + (0 if sign == 1 else 1)

    gens = []
    for g in ("i", "j"):
        images = []
        for p in range(8):
            sign = 1 if p % 2 == 0 else -1
            s, u = units[(names[p // 2], g)]
            images.append(point(sign * s, u))
        gens.append(Permutation(tuple(images)))
    return gens


def _load_json(path: str | Path) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read group file {path}: {exc}") from exc
    if not isinstance(data, dict) or "degree" not in data or "generators" not in data:
        raise FormatError(f"{path}: expected an object with 'degree' and 'generators'")
    degree = data["degree"]
    if not isinstance(degree, int) or degree < 1:
        raise FormatError(f"{path}: degree must be a positive integer")
    if not isinstance(data["generators"], list):
        raise FormatError(f"{path}: generators must be a list of image lists")
    subsets = data.get("subsets", {})
    if not isinstance(subsets, dict):
        raise FormatError(f"{path}: subsets must be an object")
    return data


def _perm_list(raw, degree: int, where: str) -> list[Permutation]:
    if not isinstance(raw, list):
        raise FormatError(f"{where}: expected a list of image lists")
    perms = []
    for images in raw:
        if not isinstance(images, list) or len(images) != degree or not all(isinstance(i, int) for i in images):
            raise FormatError(f"{where}: {images!r} is not a list of {degree} point indices")
        perms.append(Permutation(tuple(images)))
    return perms


def permutation_generators(spec: GroupSpec | str) -> tuple[int, list[Permutation]]:
    """Degree and ordered generator list realizing ``spec``."""
    spec = _as_spec(spec)
    n = spec.n
    if spec.kind == "cyclic":
        if n == 1:
            return 1, []
        return n, [Permutation(tuple((i + 1) % n for i in range(n)))]
    if spec.kind == "dihedral":
        half = n // 2
        if half == 1:
            return 2, [Permutation.identity(2), Permutation((1, 0))]
        if half == 2:
            return 4, [Permutation((1, 0, 3, 2)), Permutation((2, 3, 0, 1))]
        rot = Permutation(tuple((i + 1) % half for i in range(half)))
        ref = Permutation(tuple((-i) % half for i in range(half)))
        return half, [rot, ref]
    if spec.kind == "quaternion":
        return 8, _quaternion_gens()
    if spec.kind == "symmetric":
        if n == 1:
            return 1, []
        if n == 2:
            return 2, [Permutation((1, 0))]
        return n, [Permutation(tuple((i + 1) % n for i in range(n))), Permutation.from_cycles(n, (0, 1))]
    if spec.kind == "alternating":
        if n < 3:
            return n, []
        return n, [Permutation.from_cycles(n, (0, 1, k)) for k in range(2, n)]
    if spec.kind == "file":
        data = _load_json(spec.path)
        return data["degree"], _perm_list(data["generators"], data["degree"], spec.path)
    ld, lg = permutation_generators(spec.left)
    rd, rg = permutation_generators(spec.right)
    degree = ld + rd
    return degree, [g.embed(degree, 0) for g in lg] + [g.embed(degree, ld) for g in rg]


def build(spec: GroupSpec | str, cap: int | None = None) -> FiniteGroup:
    degree, gens = permutation_generators(spec)
    return close_generators(degree, gens, cap=cap)


def load_group_file(path: str | Path, cap: int | None = None) -> tuple[FiniteGroup, dict[str, ElementSubset]]:
    """Group from a JSON file plus its named subsets, each checked to be normal."""
    data = _load_json(path)
    degree = data["degree"]
    G = close_generators(degree, _perm_list(data["generators"], degree, str(path)), cap=cap)
    named = {}
    for name, raw in data.get("subsets", {}).items():
        ids = []
        for perm in _perm_list(raw, degree, f"{path}: subset {name!r}"):
            idx = G.index_of(perm)
            if idx is None:
                raise NotSubgroupOfGroup(f"subset {name!r}: {perm} is not an element of the group", name)
            ids.append(idx)
        sub = generate(G, ids)
        if not sub.is_conjugation_stable():
            raise NotNormal(f"subset {name!r} does not generate a normal subgroup", name)
        named[name] = sub
    return G, named


def named_subgroups(spec: GroupSpec | str, G: FiniteGroup) -> dict[str, ElementSubset]:
    """Stable names for subgroups of a built group.

    ``1`` and ``G`` always exist.  ``x-cyclic`` is generated by the first
    generator of the left-most factor; products also expose their factors as
    ``left`` and ``right``.  File groups expose the subsets declared in the file.
    """
    spec = _as_spec(spec)
    names = {"1": ElementSubset.trivial(G), "G": ElementSubset.whole(G)}
    if spec.kind == "file":
        _, named = load_group_file(spec.path)
        # same file, same BFS order: ids agree with G
        for name, sub in named.items():
            names[name] = ElementSubset(G, sub.array)
        return names
    gens = list(G.generator_ids)
    names["x-cyclic"] = generate(G, gens[:1])
    if spec.is_product:
        split = len(permutation_generators(spec.left)[1])
        names["left"] = generate(G, gens[:split])
        names["right"] = generate(G, gens[split:])
    return names


def resolve_normal(spec: GroupSpec | str, G: FiniteGroup, text: str) -> tuple[str, ElementSubset]:
    """Interpret a ``--normal`` argument against the group built from ``spec``.

    Accepts a stable name, ``centre``/``hypercentre``, ``N<k>`` (k-th entry of
    the sorted normal-subgroup list), or a group spec whose generators are
    embedded as permutations on the first points of G.
    """
    from . import structure

    names = named_subgroups(spec, G)
    if text in names:
        sub = names[text]
    elif text in ("centre", "center", "Z"):
        sub = structure.centre(G)
    elif text in ("hypercentre", "hypercenter", "Zinf"):
        sub = structure.hypercentre(G)
    elif re.fullmatch(r"N\d+", text):
        normals = structure.normal_subgroups(G)
        k = int(text[1:])
        if k >= len(normals):
            raise ParseError(f"{text}: group has only {len(normals)} normal subgroups")
        return text, normals[k]
    else:
        sub = _embed_spec(G, text)
    if not sub.is_conjugation_stable():
        raise NotNormal(f"{text!r} is not a normal subgroup of {spec}", text)
    return text, sub


def _embed_spec(G: FiniteGroup, text: str) -> ElementSubset:
    try:
        sub_degree, gens = permutation_generators(parse_spec(text))
    except ParseError as exc:
        raise ParseError(f"{text!r} is neither a subgroup name nor a group spec: {exc}") from exc
    if G.degree is None or sub_degree > G.degree:
        raise NotSubgroupOfGroup(f"{text!r} does not act on the points of this group", text)
    ids = []
    for g in gens:
        idx = G.index_of(g.embed(G.degree))
        if idx is None:
            raise NotSubgroupOfGroup(f"{text!r}: generator {g} is not in the group", text)
        ids.append(idx)
    return generate(G, ids)


@dataclass
class CorpusEntry:
    spec: str
    group: FiniteGroup
    normals: list[tuple[str, ElementSubset]]


DEFAULT_SPECS = (
    [f"C{n}" for n in range(1, 25)]
    + [f"D{2 * n}" for n in range(1, 17)]
    + ["Q8", "S3", "S4", "S5", "A4", "A5",
       "D16xD8", "D8xC3", "S3xS3", "Q8xC9", "S3xC4", "S3xC3", "A4xC2", "D8xS3"]
)


def corpus_entry(spec: str, group: FiniteGroup | None = None) -> CorpusEntry:
    from .structure import normal_subgroups

    G = build(spec) if group is None else group
    normals = normal_subgroups(G)
    return CorpusEntry(spec, G, [(f"N{k}", N) for k, N in enumerate(normals)])


def default_corpus(max_order: int | None = None) -> list[CorpusEntry]:
    """Every default spec paired with all of its normal subgroups."""
    entries = []
    for spec in DEFAULT_SPECS:
        G = build(spec)
        if max_order is not None and G.order > max_order:
            continue
        entries.append(corpus_entry(spec, G))
    return entries
