"""File formats: identity files, general presentations, JSON payloads, presets.

An identity file is UTF-8 text with a signature header followed by one
identity per line::

    sig l=1 n=2
    (u 1 z) = z

Lines starting with ``#`` and blank lines are ignored. A general
presentation file declares its symbols, the ternary term, and identities::

    gsig plus/2 neg/1 zero/0
    malcev (plus x1 (plus (neg x2) x3))
    (plus x1 x2) = (plus x2 x1)

A symbol name containing ``{i}`` declares an unbounded indexed family.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .freering import ModuleVec, NCPoly
from .interp import (
    GeneralIdentity,
    GeneralPresentation,
    GeneralSignature,
    parse_general_term,
)
from .presentation import ModulePresentation, RingPresentation, VarietyPresentation
from .terms import Identity, Signature, parse_term, print_term


class FormatError(ValueError):
    pass


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def load_identity_text(text: str, source: str = "<string>") -> VarietyPresentation:
    sig = None
    ids = []
    for lineno, line in _content_lines(text):
        if sig is None:
            try:
                sig = Signature.parse_header(line)
            except ValueError as e:
                raise FormatError(f"{source}:{lineno}: {e}") from None
            continue
        parts = line.split(" = ")
        if len(parts) != 2:
            raise FormatError(f"{source}:{lineno}: expected 'term = term'")
        try:
            ids.append(Identity(parse_term(parts[0], sig), parse_term(parts[1], sig)))
        except ValueError as e:
            raise FormatError(f"{source}:{lineno}: {e}") from None
    if sig is None:
        raise FormatError(f"{source}: missing signature header")
    return VarietyPresentation(sig, tuple(ids))


def dump_identity_text(vp: VarietyPresentation) -> str:
    lines = [vp.sig.header()]
    lines += [f"{print_term(i.lhs)} = {print_term(i.rhs)}" for i in vp.ids]
    return "\n".join(lines) + "\n"


def load_general_text(text: str, source: str = "<string>") -> GeneralPresentation:
    gsig = None
    malcev = None
    ids = []
    for lineno, line in _content_lines(text):
        if line.startswith("gsig"):
            ops = []
            families = []
            for spec in line.split()[1:]:
                if "/" not in spec:
                    raise FormatError(f"{source}:{lineno}: expected name/arity, got {spec!r}")
                name, _, arity = spec.rpartition("/")
                if not arity.isdigit():
                    raise FormatError(f"{source}:{lineno}: bad arity in {spec!r}")
                if "{i}" in name:
                    families.append(name)
                else:
                    ops.append((name, int(arity)))
            gsig = GeneralSignature(tuple(ops), tuple(families))
        elif line.startswith("malcev"):
            if gsig is None:
                raise FormatError(f"{source}:{lineno}: malcev line before gsig")
            malcev = parse_general_term(line[len("malcev") :].strip(), gsig)
        else:
            if gsig is None:
                raise FormatError(f"{source}:{lineno}: identity before gsig")
            parts = line.split(" = ")
            if len(parts) != 2:
                raise FormatError(f"{source}:{lineno}: expected 'term = term'")
            try:
                ids.append(
                    GeneralIdentity(
                        parse_general_term(parts[0], gsig), parse_general_term(parts[1], gsig)
                    )
                )
            except ValueError as e:
                raise FormatError(f"{source}:{lineno}: {e}") from None
    if gsig is None:
        raise FormatError(f"{source}: missing gsig line")
    if malcev is None:
        raise FormatError(f"{source}: missing malcev line")
    return GeneralPresentation(gsig, malcev, tuple(ids))


def preset_text(name: str, exts: tuple[str, ...] = (".ids", ".gp")) -> str:
    base = resources.files("malcev").joinpath("presets")
    candidates = [name] + [f"{name}{ext}" for ext in exts]
    for cand in candidates:
        res = base.joinpath(Path(cand).name)
        if res.is_file():
            return res.read_text()
    raise FormatError(f"no such file or preset: {name}")


def read_input(value: str, exts: tuple[str, ...] = (".ids", ".gp")) -> str:
    """Contents of a path on disk, falling back to a bundled preset name."""
    try:
        with open(value, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError:
        return preset_text(value, exts)


def load_signature(value: str) -> Signature:
    """A signature from an inline header string or the header of a file."""
    inline = value.strip()
    if not inline.startswith("sig"):
        probe = f"sig {inline}"
    else:
        probe = inline
    try:
        return Signature.parse_header(probe)
    except ValueError:
        pass
    text = read_input(value)
    for _, line in _content_lines(text):
        return Signature.parse_header(line)
    raise FormatError(f"{value}: missing signature header")


def load_basis(value: str) -> VarietyPresentation:
    return load_identity_text(read_input(value, exts=(".ids",)), source=value)


def load_general(value: str) -> GeneralPresentation:
    return load_general_text(read_input(value, exts=(".gp",)), source=value)


def ring_presentation_to_json(rp: RingPresentation) -> dict:
    return rp.to_json()


def ring_presentation_from_json(data: dict) -> RingPresentation:
    n = int(data["generators"])
    return RingPresentation(n, tuple(NCPoly.from_json(n, rel) for rel in data["relations"]))


def module_presentation_from_json(data: dict) -> ModulePresentation:
    over = ring_presentation_from_json(data["over"])
    ell = int(data["generators"])
    rels = tuple(ModuleVec.from_json(ell, over.n, rel) for rel in data["relations"])
    return ModulePresentation(ell, rels, over)


def load_ring_presentation(value: str) -> RingPresentation:
    return ring_presentation_from_json(json.loads(read_input(value)))


def load_module_presentation(value: str) -> ModulePresentation:
    return module_presentation_from_json(json.loads(read_input(value)))


def load_gens_file(value: str) -> tuple[int, int, list[NCPoly], list[ModuleVec]]:
    """Generator file: {"n":…, "ell":…, "ideal_gens":[…], "submodule_gens":[…]}."""
    data = json.loads(read_input(value))
    n = int(data["n"])
    ell = int(data.get("ell", 0))
    ideal = [NCPoly.from_json(n, g) for g in data.get("ideal_gens", [])]
    module = [ModuleVec.from_json(ell, n, v) for v in data.get("submodule_gens", [])]
    return n, ell, ideal, module


def load_chain_family(value: str) -> tuple[int, object]:
    """A chain schema: a builtin name or a JSON file listing family members."""
    from .fbcheck import BUILTIN_CHAINS

    if value in BUILTIN_CHAINS:
        return 2, BUILTIN_CHAINS[value]()
    data = json.loads(read_input(value))
    n = int(data["n"])
    members = [NCPoly.from_json(n, m) for m in data["family"]]
    return n, members
