"""Text generators for the M_d table, point-count exception lists and the 73 report."""

from typing import Dict, List, Optional, Sequence, Tuple

from torsioncert.curves2.x173 import X173Report, cycle_type


def _section(title: str) -> str:
    return f"# ======= {title} ======="


class MdTableGenerator:
    """Two-row d / M_d table plus one machine-readable line per d."""

    # Columns per printed block, as in the published table.
    BLOCK = 12

    def __init__(
        self,
        rows: Sequence[Tuple[int, int, bool]],
        searched: Optional[Dict[int, int]] = None,
    ) -> None:
        """
        Args:
            rows: (d, M_d, passes) triples
            searched: Optional least M found by search, per d
        """
        self.rows = list(rows)
        self.searched = searched or {}

    def generate(self) -> str:
        lines = [_section("M_d table")]
        for start in range(0, len(self.rows), self.BLOCK):
            block = self.rows[start:start + self.BLOCK]
            width = max(len(str(m)) for _, m, _ in block) + 1
            lines.append("d   |" + "".join(f"{d:>{width}}" for d, _, _ in block))
            lines.append("M_d |" + "".join(f"{m:>{width}}" for _, m, _ in block))
            lines.append("")
        lines.append(_section("Rows"))
        for d, m, passes in self.rows:
            line = f"d={d} M={m} {'PASS' if passes else 'FAIL'}"
            if d in self.searched:
                line += f" least_M={self.searched[d]} (search result, may differ from table)"
            lines.append(line)
        return "\n".join(lines) + "\n"


class ExceptionListGenerator:
    """Primes failing the point-count condition, one line per degree."""

    def __init__(self, ell: int, p_max: int, exceptions: Dict[int, List[int]]) -> None:
        self.ell = ell
        self.p_max = p_max
        self.exceptions = exceptions

    def generate(self) -> str:
        lines = [_section("Condition 3 exceptions"), f"l = {self.ell}", f"p_max = {self.p_max}"]
        for d, primes in sorted(self.exceptions.items()):
            lines.append(f"d={d} exceptions={','.join(map(str, primes)) or 'none'}")
        return "\n".join(lines) + "\n"


class X173ReportGenerator:
    """Structured text for the analysis of Y_1(73)(F_64)."""

    def __init__(self, report: X173Report) -> None:
        self.report = report

    def generate(self) -> str:
        r = self.report
        lines = [
            _section("Field"),
            f"modulus = {bin(r.modulus)}",
            "",
            _section("Parameters"),
            f"count = {len(r.parameters)}",
            f"values = {','.join(map(str, r.parameters))}",
            f"matches_sextic_roots = {r.sextic_roots_match}",
            "",
            _section("Frobenius orbits"),
        ]
        for i, (orbit, poly) in enumerate(zip(r.orbits, r.orbit_polynomials)):
            lines.append(f"orbit.{i} = {','.join(map(str, orbit))} ; minpoly {bin(poly)}")
        lines += [
            "",
            _section("Diamond action"),
            f"diamond = {r.diamond}",
            f"permutation = {','.join(map(str, r.permutation))}",
            f"cycle_type = {','.join(map(str, cycle_type(r.permutation)))}",
            f"transitive = {r.transitive}",
            "",
            _section("Point counts"),
            f"orders = {','.join(sorted({str(n) for n in r.point_counts.values()}))}",
            f"trace = {r.trace}",
            f"frobenius_polynomial = {','.join(map(str, r.frobenius_polynomial))}",
            f"quoted_polynomial = {','.join(map(str, r.quoted_polynomial))}",
            f"discrepancy = {r.frobenius_discrepancy}",
        ]
        lines += [f"note = {note}" for note in r.notes]
        return "\n".join(lines) + "\n"
