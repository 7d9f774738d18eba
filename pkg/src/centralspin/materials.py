"""GaAs material data and the box-model average hyperfine coupling.

The per-site coupling is A_k = A0 * V0 * |psi(r_k)|^2 with a normalized
anisotropic Gaussian envelope psi.  Because the envelope integrates to
one, summing A_k over sites at density 1/V0 and dividing by the effective
number of covered cells returns the abundance-weighted per-cell coupling,
independent of the dot widths.  That per-cell value is what the box model
uses; the dot geometry additionally sets how many nuclei participate.
This is an order-of-magnitude consistency check, not a precision fit.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi
from pathlib import Path

# Electron gyromagnetic ratio, 10^7 rad / (T s).
GAMMA_E_1E7 = 0.176

# Zinc-blende cell volume used to convert envelope density to site counts, nm^3.
DEFAULT_V0_NM3 = 800.0


@dataclass(frozen=True)
class Isotope:
    """One nuclear species: abundance in percent, spin, coupling, gyromagnetic ratio."""

    species: str
    abundance_pct: float
    f: float
    a0_uev: float
    gamma_1e7: float

    @property
    def element(self) -> str:
        return self.species.rstrip("0123456789")


@dataclass(frozen=True)
class MaterialTable:
    rows: tuple[Isotope, ...]
    v0_nm3: float = DEFAULT_V0_NM3

    def __post_init__(self):
        if not self.rows:
            raise ValueError("material table must contain at least one isotope")
        if self.v0_nm3 <= 0:
            raise ValueError("cell volume must be positive")


@dataclass(frozen=True)
class DotGeometry:
    """Anisotropic Gaussian envelope widths of the confined electron, nm."""

    l_perp_nm: float = 20.0
    l_z_nm: float = 2.0

    def __post_init__(self):
        if self.l_perp_nm <= 0 or self.l_z_nm <= 0:
            raise ValueError("envelope widths must be positive")


def gaas_table() -> MaterialTable:
    """Lateral GaAs quantum dot defaults (Ga-69, Ga-71, As-75)."""
    return MaterialTable(
        rows=(
            Isotope("Ga69", 60.4, 1.5, 36.0, 6.44),
            Isotope("Ga71", 59.6, 1.5, 46.0, 8.18),
            Isotope("As75", 100.0, 1.5, 43.0, 7.29),
        )
    )


def load_material_table(path: str | Path, v0_nm3: float = DEFAULT_V0_NM3) -> MaterialTable:
    """Read isotopes from a plain text table.

    One row per isotope, comma or whitespace separated:
    species, abundance(%), F, A0(ueV), gamma(10^7 rad/T/s).
    Lines starting with '#' are comments.
    """
    rows = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p for p in line.replace(",", " ").split() if p]
        if len(parts) != 5:
            raise ValueError(f"expected 5 columns, got {len(parts)}: {raw!r}")
        rows.append(
            Isotope(
                species=parts[0],
                abundance_pct=float(parts[1]),
                f=float(parts[2]),
                a0_uev=float(parts[3]),
                gamma_1e7=float(parts[4]),
            )
        )
    return MaterialTable(rows=tuple(rows), v0_nm3=v0_nm3)


def site_coupling(a0_uev: float, v0_nm3: float, psi_sq_per_nm3: float) -> float:
    """Coupling of one nucleus, A0 * V0 * |psi|^2."""
    return a0_uev * v0_nm3 * psi_sq_per_nm3


def per_cell_coupling(table: MaterialTable) -> float:
    """Abundance-weighted coupling summed over the sublattices of one cell.

    Isotopes of the same element share a sublattice site, so their
    abundances are normalized within the element before summing element
    contributions (one cation plus one anion per zinc-blende cell).
    """
    by_element: dict[str, list[Isotope]] = {}
    for iso in table.rows:
        by_element.setdefault(iso.element, []).append(iso)
    total = 0.0
    for isotopes in by_element.values():
        norm = sum(i.abundance_pct for i in isotopes)
        if norm == 0:
            continue
        total += sum(i.abundance_pct * i.a0_uev for i in isotopes) / norm
    return total


def effective_cell_count(dot: DotGeometry, v0_nm3: float = DEFAULT_V0_NM3) -> float:
    """Participation number of cells covered by the envelope.

    For the normalized Gaussian, (sum w_k)^2 / sum w_k^2 with
    w_k = V0 |psi(r_k)|^2 evaluates to 2^(3/2) pi^(3/2) l_perp^2 l_z / V0.
    """
    return 2 ** 1.5 * pi ** 1.5 * dot.l_perp_nm ** 2 * dot.l_z_nm / v0_nm3


def average_coupling(dot: DotGeometry, table: MaterialTable) -> float:
    """Box-model average coupling implied by the material table, ueV.

    With sites at density 1/V0 and the envelope normalized, the sum of
    A_k over all sites equals the per-cell coupling and the effective
    number of covered cells is one envelope's worth, so the average per
    participating cell is exactly the per-cell value.  The geometry is
    validated (and sets the participation number) but cancels out of the
    average itself.
    """
    if not isinstance(dot, DotGeometry):
        raise TypeError("dot must be a DotGeometry")
    # total coupling: (1/V0) integral A_cell V0 |psi|^2 = A_cell
    return per_cell_coupling(table)
