"""Parameter types for the Dini family D_{a,nu} and its normalized form w_{a,nu}."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class Order:
    """Real order nu of a Bessel function of the first kind.

    Requires nu > -1 so that every series coefficient Gamma(n + nu + 1)
    has positive argument.
    """

    nu: float

    def __post_init__(self) -> None:
        nu = float(self.nu)
        if not nu > -1.0:  # also rejects NaN
            raise DomainError("nu must exceed -1")
        object.__setattr__(self, "nu", nu)


@dataclass(frozen=True)
class DiniFamily:
    """The pair (a, nu) defining D_{a,nu}(x) = (a - nu) J_nu(x) + x J'_nu(x).

    a > 0 keeps w_{a,nu} normalized with all Dini zeros real, and the
    derived coupling gamma = a - nu satisfies gamma + nu = a >= 0, the
    Landau monotonicity precondition.  The ``order`` field accepts a bare
    float for convenience.
    """

    a: float
    order: Order

    def __post_init__(self) -> None:
        a = float(self.a)
        if not a > 0.0:
            raise DomainError("a must be positive")
        object.__setattr__(self, "a", a)
        if not isinstance(self.order, Order):
            object.__setattr__(self, "order", Order(float(self.order)))

    @property
    def nu(self) -> float:
        return self.order.nu

    @property
    def gamma(self) -> float:
        """Coupling gamma = a - nu of the underlying gamma*J + x*J' form."""
        return self.a - self.order.nu

    def to_dict(self) -> dict:
        return {"a": self.a, "nu": self.nu}

    @classmethod
    def from_dict(cls, d: dict) -> "DiniFamily":
        return cls(float(d["a"]), Order(float(d["nu"])))
