"""The stratification functions of the Roth variety for a pair (F, G)."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DependentInput, IdentityFailure
from .rational import RationalFunction, check_linear_independence
from .separable import SeparableSum, leibniz_determinant


def jacobian_minor(F: RationalFunction, G: RationalFunction) -> list[list[SeparableSum]]:
    """First five columns of the Jacobian of the five Roth equations; column j only involves y_j."""
    dF, dG = F.derivative(), G.derivative()

    def f(v):
        return SeparableSum.leaf(v, dF)

    def g(v):
        return SeparableSum.leaf(v, dG)

    z = SeparableSum()
    return [
        [f(1) - g(1), g(2) - f(2), g(3) - f(3), f(4) - g(4), z],
        [z, z, z, z, f(5) - g(5)],
        [f(1), z, -f(3), z, -f(5)],
        [z, f(2), z, -f(4), z],
        [z, z, g(3), -g(4), z],
    ]


@dataclass(frozen=True)
class StratificationBundle:
    F: RationalFunction
    G: RationalFunction
    dF: RationalFunction
    dG: RationalFunction
    ratio: RationalFunction  # G'/F'
    curvature: RationalFunction  # (G'/F')'
    summand: RationalFunction  # (F'-G') (G'/F') / (G'/F')'
    D: SeparableSum  # closed form, variables y1..y5
    Dtilde: SeparableSum  # y1..y4
    E: SeparableSum  # y1, y4
    Etilde: SeparableSum  # y1, y4
    curvature_1: SeparableSum
    curvature_4: SeparableSum
    low_factor: SeparableSum  # F'(y1)F'(y2)F'(y3)F'(y4)(G'-F')(y5)

    @property
    def dG_minus_dF(self) -> RationalFunction:
        return self.dG - self.dF

    def determinant(self) -> SeparableSum:
        return leibniz_determinant(jacobian_minor(self.F, self.G))

    def determinant_identity_holds(self) -> bool:
        return self.determinant().equals(self.D)

    def dtilde_identity_holds(self) -> bool:
        """D = low_factor * Dtilde as functions."""
        return (self.low_factor * self.Dtilde).equals(self.D)

    def etilde_identity_holds(self) -> bool:
        return (self.curvature_1 * self.curvature_4 * self.Etilde).equals(self.E)


def build_stratification_bundle(
    F: RationalFunction, G: RationalFunction, verify_determinant: bool = True
) -> StratificationBundle:
    if not check_linear_independence(F, G):
        raise DependentInput(f"1, {F}, {G} are linearly dependent over Q")
    dF, dG = F.derivative(), G.derivative()
    ratio = dG / dF
    curvature = ratio.derivative()
    summand = (dF - dG) * ratio / curvature

    def leaf(v, R):
        return SeparableSum.leaf(v, R)

    D = leaf(5, dG - dF) * (
        leaf(1, dG) * leaf(2, dF) * leaf(3, dF) * leaf(4, dG)
        - leaf(1, dF) * leaf(2, dG) * leaf(3, dG) * leaf(4, dF)
    )
    Dtilde = leaf(1, ratio) * leaf(4, ratio) - leaf(2, ratio) * leaf(3, ratio)
    E = (
        leaf(1, (dF - dG) * ratio) * leaf(4, curvature)
        - leaf(4, (dF - dG) * ratio) * leaf(1, curvature)
    )
    Etilde = leaf(1, summand) - leaf(4, summand)
    low = leaf(1, dF) * leaf(2, dF) * leaf(3, dF) * leaf(4, dF) * leaf(5, dG - dF)
    bundle = StratificationBundle(
        F=F,
        G=G,
        dF=dF,
        dG=dG,
        ratio=ratio,
        curvature=curvature,
        summand=summand,
        D=D,
        Dtilde=Dtilde,
        E=E,
        Etilde=Etilde,
        curvature_1=leaf(1, curvature),
        curvature_4=leaf(4, curvature),
        low_factor=low,
    )
    if verify_determinant and not bundle.determinant_identity_holds():
        raise IdentityFailure(f"Jacobian determinant disagrees with the closed form for ({F}, {G})")
    return bundle
