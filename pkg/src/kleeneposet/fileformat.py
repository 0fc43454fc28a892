"""Line-oriented text format for posets, involutions and named subsets, plus DOT export.

::

    # comment
    poset BOWTIE
    elem 0 a b c d 1
    le 0 a
    le a c
    inv a d
    set S a b
    end
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import KleeneError, NotInvolutive, ParseError, UnknownElement
from .involution import InvolutivePoset, attach_involution
from .poset import ElementSubset, FinitePoset, build_poset


@dataclass
class PosetEntry:
    name: str
    poset: FinitePoset
    involution: InvolutivePoset | None = None
    sets: dict[str, ElementSubset] = field(default_factory=dict)

    @property
    def structure(self):
        return self.involution if self.involution is not None else self.poset


@dataclass
class PosetFile:
    entries: dict[str, PosetEntry] = field(default_factory=dict)

    def __getitem__(self, name: str) -> PosetEntry:
        try:
            return self.entries[name]
        except KeyError:
            known = ", ".join(self.entries) or "none"
            raise UnknownElement(f"no poset named {name!r} (have: {known})") from None

    def names(self) -> list[str]:
        return list(self.entries)

    def only(self) -> PosetEntry:
        if len(self.entries) != 1:
            raise ParseError("file holds several posets; pick one with --poset")
        return next(iter(self.entries.values()))


def _with_line(err: KleeneError, line: int) -> KleeneError:
    if err.line is None:
        err.line = line
    return err


def _finish_block(name, start, elems, elem_lines, les, invs, sets) -> PosetEntry:
    for (a, b), ln in les:
        for x in (a, b):
            if x not in elem_lines:
                raise UnknownElement(f"unknown element {x!r} in le", line=ln)
    try:
        P = build_poset(elems, [p for p, _ in les])
    except KleeneError as e:
        raise _with_line(e, start)
    K = None
    if invs:
        mapping: dict[str, str] = {}
        for (a, b), ln in invs:
            for x in (a, b):
                if x not in elem_lines:
                    raise UnknownElement(f"unknown element {x!r} in inv", line=ln)
            for x, y in ((a, b), (b, a)):
                if mapping.get(x, y) != y:
                    raise NotInvolutive(f"{x!r} is paired twice", line=ln)
                mapping[x] = y
        try:
            K = attach_involution(P, mapping)
        except KleeneError as e:
            raise _with_line(e, invs[0][1])
    subsets = {}
    for sname, members, ln in sets:
        for x in members:
            if x not in elem_lines:
                raise UnknownElement(f"unknown element {x!r} in set {sname}", line=ln)
        subsets[sname] = P.subset(members)
    return PosetEntry(name, P, K, subsets)


def parse(text: str) -> PosetFile:
    out = PosetFile()
    current = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        kw, args = toks[0], toks[1:]
        if current is None:
            if kw != "poset" or len(args) != 1:
                raise ParseError(f"expected 'poset NAME', got {raw.strip()!r}", line=ln)
            if args[0] in out.entries:
                raise ParseError(f"poset {args[0]!r} defined twice", line=ln)
            current = {"name": args[0], "start": ln, "elems": [], "elem_lines": {},
                       "les": [], "invs": [], "sets": []}
            continue
        if kw == "end":
            if args:
                raise ParseError("'end' takes no arguments", line=ln)
            c = current
            out.entries[c["name"]] = _finish_block(c["name"], c["start"], c["elems"],
                                                   c["elem_lines"], c["les"], c["invs"], c["sets"])
            current = None
        elif kw == "elem":
            if not args:
                raise ParseError("'elem' needs at least one id", line=ln)
            for x in args:
                if x in current["elem_lines"]:
                    raise ParseError(f"element {x!r} declared twice", line=ln)
                current["elem_lines"][x] = ln
                current["elems"].append(x)
        elif kw in ("le", "inv"):
            if len(args) != 2:
                raise ParseError(f"'{kw}' takes exactly two ids", line=ln)
            current["les" if kw == "le" else "invs"].append(((args[0], args[1]), ln))
        elif kw == "set":
            if len(args) < 1:
                raise ParseError("'set' needs a name", line=ln)
            current["sets"].append((args[0], args[1:], ln))
        else:
            raise ParseError(f"unknown keyword {kw!r}", line=ln)
    if current is not None:
        raise ParseError(f"poset {current['name']!r} is missing 'end'", line=current["start"])
    if not out.entries:
        raise ParseError("no poset blocks found", line=1)
    return out


def load(path: str | Path) -> PosetFile:
    return parse(Path(path).read_text(encoding="utf-8"))


def format_entry(entry: PosetEntry) -> str:
    P = entry.poset
    lines = [f"poset {entry.name}", "elem " + " ".join(P.labels)]
    for i, j in P.covers:
        lines.append(f"le {P.labels[i]} {P.labels[j]}")
    if entry.involution is not None:
        inv = entry.involution.inv
        for i, j in enumerate(inv):
            if i <= j:
                lines.append(f"inv {P.labels[i]} {P.labels[j]}")
    for name, sub in entry.sets.items():
        members = [x for x in P.labels if x in sub]
        lines.append(" ".join(["set", name] + members))
    lines.append("end")
    return "\n".join(lines) + "\n"


def format_file(entries) -> str:
    if isinstance(entries, PosetFile):
        entries = entries.entries.values()
    return "\n".join(format_entry(e) for e in entries)


def entry(name: str, X, sets: dict | None = None) -> PosetEntry:
    """Wrap a FinitePoset or InvolutivePoset for writing."""
    if isinstance(X, InvolutivePoset):
        return PosetEntry(name, X.poset, X, dict(sets or {}))
    return PosetEntry(name, X, None, dict(sets or {}))


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(name: str, X) -> str:
    """Hasse diagram drawn bottom-to-top; involution pairs as dashed undirected edges."""
    P = X.poset if isinstance(X, InvolutivePoset) else X
    out = [f"digraph {_dot_id(name)} {{", "  rankdir=BT;"]
    for lab in P.labels:
        out.append(f"  {_dot_id(lab)};")
    for i, j in P.covers:
        out.append(f"  {_dot_id(P.labels[i])} -> {_dot_id(P.labels[j])};")
    if isinstance(X, InvolutivePoset):
        for i, j in enumerate(X.inv):
            if i < j:
                out.append(f"  {_dot_id(P.labels[i])} -> {_dot_id(P.labels[j])} "
                           "[style=dashed, dir=none, constraint=false];")
            elif i == j:
                out.append(f"  {_dot_id(P.labels[i])} [shape=doublecircle];")
    out.append("}")
    return "\n".join(out) + "\n"
