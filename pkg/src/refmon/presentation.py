"""Finitely presented commutative monoids: the Presentation container and its
line-oriented file format.

Format (UTF-8, `#` starts a comment):

    monoid <name>
    generators <id> <id> ...
    relation <term> = <term>

where a term is `k*<id> + ...` (coefficient 1 may be omitted, `0` is empty).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .words import GeneratorSet, ParseError, Word, parse_term


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word

    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def format(self, gens: GeneratorSet) -> str:
        return f"{self.lhs.format(gens)} = {self.rhs.format(gens)}"


@dataclass(frozen=True)
class Presentation:
    gens: GeneratorSet
    relations: tuple[Relation, ...] = ()
    name: str = "M"

    def __post_init__(self) -> None:
        n = len(self.gens)
        for rel in self.relations:
            for word in (rel.lhs, rel.rhs):
                for idx, _ in word.exps:
                    if not 0 <= idx < n:
                        raise ValueError(f"relation references generator index {idx} out of range")

    def word(self, text: str) -> Word:
        return parse_term(text, self.gens)

    def format(self) -> str:
        lines = [f"monoid {self.name}", "generators " + " ".join(self.gens.names)]
        lines += [f"relation {r.format(self.gens)}" for r in self.relations]
        return "\n".join(lines) + "\n"


def make_presentation(name: str, gen_names: list[str], relations: list[tuple[Word, Word]]) -> Presentation:
    gens = GeneratorSet(tuple(gen_names))
    rels = tuple(Relation(l, r) for l, r in relations if l != r)
    return Presentation(gens, rels, name)


def parse_presentation(text: str) -> Presentation:
    name = None
    gens: GeneratorSet | None = None
    rels: list[Relation] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "monoid":
            if not rest:
                raise ParseError("missing monoid name", lineno)
            name = rest
        elif key == "generators":
            if gens is not None:
                raise ParseError("duplicate generators line", lineno)
            try:
                gens = GeneratorSet(tuple(rest.split()))
            except ParseError as exc:
                raise ParseError(str(exc), lineno) from None
        elif key == "relation":
            if gens is None:
                raise ParseError("relation before generators line", lineno)
            if "=" not in rest:
                raise ParseError("relation needs '='", lineno)
            lhs_s, _, rhs_s = rest.partition("=")
            lhs = parse_term(lhs_s, gens, lineno)
            rhs = parse_term(rhs_s, gens, lineno)
            if lhs != rhs:
                rels.append(Relation(lhs, rhs))
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    if gens is None:
        raise ParseError("no generators line")
    return Presentation(gens, tuple(rels), name or "M")
