"""Points of Y_1(73) over F_64 and the action of the diamond operator <10>.

A point of Y_1(73)(F_64) is a Tate curve E_{b,c} whose point (0, 0) has order
73. All of them are supersingular (c = 1), there are 24, they form four
Frobenius orbits of size 6 (one per irreducible sextic) and <10> permutes the
orbits cyclically.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from torsioncert.core.constants import (
    ALTERNATE_F64_MODULUS,
    BINARY_FIELD_MODULI,
    X173_DIAMOND,
    X173_QUOTED_FROBENIUS,
    X173_SEXTICS,
)
from torsioncert.core.errors import InternalConsistencyError, InvalidInputError
from torsioncert.core.logging_config import get_logger
from torsioncert.curves2.tate import TateCurve, tate_normalize
from torsioncert.curves2.weierstrass import point_order
from torsioncert.exactalg.binaryfield import (
    BinaryField,
    BinaryFieldElt,
    embedding_table,
    evaluate_f2_polynomial,
)

logger = get_logger(__name__)

LEVEL = 73
FIELD_DEGREE = 6
# Hasse: #E(F_64) <= 64 + 1 + 16.
ORDER_BOUND = 81


def f64(modulus: int = 0) -> BinaryField:
    return BinaryField(FIELD_DEGREE, modulus or BINARY_FIELD_MODULI[FIELD_DEGREE])


def find_73_parameters(fld: Optional[BinaryField] = None) -> List[BinaryFieldElt]:
    """All b in F_64 for which (0, 0) has order 73 on E_{b,1}, by increasing value."""
    fld = fld or f64()
    found = []
    for b in fld.nonzero():
        curve = TateCurve(b, fld.one)
        if point_order(curve.marked_point, ORDER_BOUND) == LEVEL:
            found.append(b)
    logger.debug("%r: %s parameters of order %s", fld, len(found), LEVEL)
    return found


def sextic_roots(fld: Optional[BinaryField] = None) -> List[BinaryFieldElt]:
    """Roots in F_64 of the product of the four sextics."""
    fld = fld or f64()
    return [
        b
        for b in fld.elements()
        if any(evaluate_f2_polynomial(poly, b).is_zero() for poly in X173_SEXTICS)
    ]


def frobenius_orbits(parameters: List[BinaryFieldElt]) -> List[Tuple[int, ...]]:
    """Orbits of b -> b^2 as sorted value tuples, ordered by their least element.

    Raises:
        InternalConsistencyError: If an orbit leaves the parameter set
    """
    values = {b.value for b in parameters}
    orbits = []
    seen: set = set()
    for b in parameters:
        if b.value in seen:
            continue
        orbit = tuple(sorted(x.value for x in b.frobenius_orbit()))
        if not set(orbit) <= values:
            raise InternalConsistencyError(f"Frobenius orbit of {b.value} leaves the parameters")
        seen.update(orbit)
        orbits.append(orbit)
    return sorted(orbits)


def diamond_image(b: BinaryFieldElt, n: int) -> BinaryFieldElt:
    """<n>(E_{b,1}, (0,0)) = (E_{b,1}, n (0,0)), brought back to Tate normal form."""
    curve = TateCurve(b, b.field.one)
    image = tate_normalize(n * curve.marked_point)
    if not image.c.is_one():
        raise InternalConsistencyError(f"<{n}> moved b={b.value} off the c = 1 family")
    return image.b


def diamond_permutation(
    orbits: List[Tuple[int, ...]], fld: BinaryField, n: int = X173_DIAMOND
) -> Tuple[int, ...]:
    """The permutation of orbit indices induced by <n>.

    Raises:
        InvalidInputError: If n is divisible by 73
        InternalConsistencyError: If <n> does not map orbits to orbits
    """
    if n % LEVEL == 0:
        raise InvalidInputError(f"<{n}> is not a diamond operator at level {LEVEL}")
    index = {value: i for i, orbit in enumerate(orbits) for value in orbit}
    images = []
    for i, orbit in enumerate(orbits):
        targets = {index.get(diamond_image(fld(value), n).value) for value in orbit}
        if len(targets) != 1 or None in targets:
            raise InternalConsistencyError(f"<{n}> does not preserve orbit {i}")
        images.append(targets.pop())
    return tuple(int(t) for t in images)


def cycle_type(permutation: Tuple[int, ...]) -> List[int]:
    """Cycle lengths, decreasing."""
    remaining = set(range(len(permutation)))
    lengths = []
    while remaining:
        start = min(remaining)
        length, current = 0, start
        while current in remaining:
            remaining.remove(current)
            current = permutation[current]
            length += 1
        lengths.append(length)
    return sorted(lengths, reverse=True)


@dataclass
class X173Report:
    """Summary of the analysis of Y_1(73)(F_64) in one presentation of F_64."""

    modulus: int
    parameters: List[int]
    sextic_roots_match: bool
    orbits: List[Tuple[int, ...]]
    orbit_polynomials: List[int]
    diamond: int
    permutation: Tuple[int, ...]
    point_counts: Dict[int, int]
    trace: int
    frobenius_polynomial: Tuple[int, int, int]
    quoted_polynomial: Tuple[int, int, int] = X173_QUOTED_FROBENIUS
    notes: List[str] = field(default_factory=list)

    @property
    def transitive(self) -> bool:
        return cycle_type(self.permutation) == [len(self.orbits)]

    @property
    def frobenius_discrepancy(self) -> bool:
        return self.frobenius_polynomial != self.quoted_polynomial


def report_73(modulus: int = 0) -> X173Report:
    """Run the full analysis over F_64 = F_2[x]/(modulus).

    Raises:
        InternalConsistencyError: If the orbit structure is not preserved
    """
    fld = f64(modulus)
    parameters = find_73_parameters(fld)
    roots = sextic_roots(fld)
    orbits = frobenius_orbits(parameters)
    counts = {b.value: TateCurve(b, fld.one).weierstrass.point_count() for b in parameters}
    traces = {fld.order + 1 - n for n in counts.values()}
    if len(traces) != 1:
        raise InternalConsistencyError(f"parameters have different traces {sorted(traces)}")
    trace = traces.pop()
    report = X173Report(
        modulus=fld.modulus,
        parameters=[b.value for b in parameters],
        sextic_roots_match={b.value for b in roots} == {b.value for b in parameters},
        orbits=orbits,
        orbit_polynomials=[fld(orbit[0]).minimal_polynomial() for orbit in orbits],
        diamond=X173_DIAMOND,
        permutation=diamond_permutation(orbits, fld),
        point_counts=counts,
        trace=trace,
        frobenius_polynomial=(1, -trace, fld.order),
    )
    if report.frobenius_discrepancy:
        quoted = report.quoted_polynomial
        message = (
            f"point count gives x^2 {-trace:+d}x + {fld.order}, "
            f"printed polynomial is x^2 {quoted[1]:+d}x {quoted[2]:+d}"
        )
        logger.warning("Frobenius polynomial discrepancy: %s", message)
        report.notes.append(message)
    return report


def modulus_independent() -> bool:
    """Whether both presentations of F_64 give the same parameters and orbit structure."""
    default, alternate = f64(), f64(ALTERNATE_F64_MODULUS)
    first, second = report_73(default.modulus), report_73(alternate.modulus)
    table = embedding_table(default, alternate)
    same_parameters = {table[b] for b in first.parameters} == set(second.parameters)
    same_shape = (
        sorted(map(len, first.orbits)) == sorted(map(len, second.orbits))
        and cycle_type(first.permutation) == cycle_type(second.permutation)
        and sorted(first.orbit_polynomials) == sorted(second.orbit_polynomials)
    )
    return same_parameters and same_shape
