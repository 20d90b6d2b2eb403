# polytransform/specfile.py

import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from .chebyshev import ChebKind, MonomialPoly
from .errors import SpecParseError
from .induction import InductionSpec, coset_spectrum, subalgebra_spectrum
from .transforms import BasisFamily, PolyBasis, SamplePoints

_SECTION = re.compile(r"^\[\s*([a-z-]+)(?:\s+(\d+))?\s*\]$")
_ROOTS_OF_UNITY = re.compile(r"^roots-of-unity\s+(\d+)$")
_CHEBYSHEV_ZEROS = re.compile(r"^chebyshev-([TUVW])-zeros\s+(\d+)$")
_REQUIRED = ("alpha", "generator", "transversal")

Line = Tuple[int, str]


class _Sections:
    """Raw section contents, with the 1-based line number of every content line."""

    def __init__(self):
        self.lines: Dict[str, List[Line]] = {}
        self.headers: Dict[str, int] = {}
        self.coset_lines: Dict[int, List[Line]] = {}
        self.coset_headers: Dict[int, int] = {}


def _split_sections(text: str) -> Tuple[_Sections, int]:
    sections = _Sections()
    current: Optional[List[Line]] = None
    line_count = 0
    for line_count, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = _SECTION.match(line)
        if header:
            name, index = header.groups()
            if name == "coset-basis":
                if index is None:
                    raise SpecParseError(line_count, "[coset-basis] needs a coset index, e.g. [coset-basis 0].")
                ell = int(index)
                if ell in sections.coset_headers:
                    raise SpecParseError(line_count, f"Duplicate section [coset-basis {ell}].")
                sections.coset_headers[ell] = line_count
                current = sections.coset_lines.setdefault(ell, [])
            elif name in ("alpha", "generator", "transversal", "basis") and index is None:
                if name in sections.headers:
                    raise SpecParseError(line_count, f"Duplicate section [{name}].")
                sections.headers[name] = line_count
                current = sections.lines.setdefault(name, [])
            else:
                raise SpecParseError(line_count, f"Unknown section '{line}'.")
            continue
        if current is None:
            raise SpecParseError(line_count, "Content before the first section header.")
        current.append((line_count, line))
    return sections, max(line_count, 1)


def parse_complex(token: str, line_number: int) -> complex:
    """Parses '1', '-0.5+2i', 'i', '1e-3-2.5i' and friends."""
    cleaned = token.replace(" ", "")
    if not cleaned:
        raise SpecParseError(line_number, "Empty entry in a comma-separated list.")
    try:
        return complex(cleaned.replace("i", "j"))
    except ValueError:
        raise SpecParseError(line_number, f"Cannot parse '{token.strip()}' as a complex number.")


def _parse_list(line: Line) -> List[complex]:
    number, text = line
    return [parse_complex(token, number) for token in text.split(",")]


def _parse_alpha(lines: List[Line], header: int) -> SamplePoints:
    if not lines:
        raise SpecParseError(header, "[alpha] is empty.")
    number, first = lines[0]
    try:
        roots = _ROOTS_OF_UNITY.match(first)
        if roots and len(lines) == 1:
            return SamplePoints.roots_of_unity(int(roots.group(1)))
        zeros = _CHEBYSHEV_ZEROS.match(first)
        if zeros and len(lines) == 1:
            return SamplePoints.chebyshev_zeros(ChebKind(zeros.group(1)), int(zeros.group(2)))
        return SamplePoints(alpha=tuple(v for line in lines for v in _parse_list(line)))
    except ValidationError as e:
        raise SpecParseError(header, f"Invalid sample points: {e.errors()[0]['msg']}")


def _parse_poly(line: Line) -> MonomialPoly:
    return MonomialPoly(coeffs=tuple(_parse_list(line)))


def _parse_basis(lines: List[Line], header: int, size: int, section: str) -> PolyBasis:
    if len(lines) == 1:
        try:
            return BasisFamily(lines[0][1]).basis(size)
        except ValueError:
            pass
    if len(lines) != size:
        raise SpecParseError(
            header,
            f"{section} needs {size} coefficient lists (or one of {', '.join(f.value for f in BasisFamily)}), "
            f"got {len(lines)} lines.",
        )
    basis = PolyBasis(evaluators=tuple(_parse_poly(line) for line in lines))
    if not basis.is_independent():
        raise SpecParseError(header, f"{section} must list linearly independent polynomials of degree < {size}.")
    return basis


def parse_spec(text: str) -> InductionSpec:
    """
    Parses a spec file into an InductionSpec.

    Sections: [alpha] (points, or 'roots-of-unity N' / 'chebyshev-<T|U|V|W>-zeros N'),
    [generator] (coefficients of r(x), lowest degree first), [transversal] (one
    coefficient list per line), [basis] (a family name or n coefficient lists,
    default monomial) and optional [coset-basis L] sections sized to the coset.
    '#' starts a comment.

    Raises:
        SpecParseError: With the 1-based line number of the offending line.
    """
    sections, last_line = _split_sections(text)
    for name in _REQUIRED:
        if name not in sections.headers:
            raise SpecParseError(last_line, f"Missing required section [{name}].")

    alpha = _parse_alpha(sections.lines["alpha"], sections.headers["alpha"])
    n = len(alpha)

    generator = sections.lines["generator"]
    if len(generator) != 1:
        raise SpecParseError(sections.headers["generator"], "[generator] must hold exactly one coefficient list.")
    r = _parse_poly(generator[0])

    transversal_lines = sections.lines["transversal"]
    if not transversal_lines:
        raise SpecParseError(sections.headers["transversal"], "[transversal] is empty.")
    transversal = tuple(_parse_poly(line) for line in transversal_lines)

    if "basis" in sections.headers:
        b = _parse_basis(sections.lines["basis"], sections.headers["basis"], n, "[basis]")
    else:
        b = PolyBasis.monomials(n)

    coset_bases: List[Optional[PolyBasis]] = [None] * len(transversal)
    spectrum = subalgebra_spectrum(r, alpha)
    for ell, lines in sorted(sections.coset_lines.items()):
        header = sections.coset_headers[ell]
        if ell >= len(transversal):
            raise SpecParseError(header, f"Coset {ell} does not exist; the transversal has {len(transversal)} elements.")
        m_ell = coset_spectrum(transversal[ell], r, alpha, spectrum=spectrum).m_ell
        coset_bases[ell] = _parse_basis(lines, header, m_ell, f"[coset-basis {ell}]") if m_ell else None

    return InductionSpec(alpha=alpha, b=b, r=r, transversal=transversal, coset_bases=tuple(coset_bases))


def load_spec(path: Union[str, Path]) -> InductionSpec:
    return parse_spec(Path(path).read_text(encoding="utf-8"))
