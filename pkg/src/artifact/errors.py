"""Exception types shared across the package.

Every validation failure carries enough context (indices, names) to locate
the first offending element, triple, or axiom.
"""


class ArtifactError(Exception):
    """Base class for all package errors."""


# --- group construction -----------------------------------------------------

class NotAssociative(ArtifactError):
    def __init__(self, x: int, y: int, z: int):
        super().__init__(f"associativity fails at triple ({x}, {y}, {z})")
        self.triple = (x, y, z)


class NoIdentity(ArtifactError):
    pass


class NoInverse(ArtifactError):
    def __init__(self, x: int):
        super().__init__(f"element {x} has no two-sided inverse")
        self.element = x


class NotLatinSquare(ArtifactError):
    def __init__(self, kind: str, index: int):
        super().__init__(f"{kind} {index} is not a permutation of the element set")
        self.kind = kind
        self.index = index


class SizeExceeded(ArtifactError):
    pass


class NotPrimePower(ArtifactError):
    pass


class AxiomFailure(ArtifactError):
    def __init__(self, axiom: str, detail: str = ""):
        super().__init__(f"near-field axiom failed: {axiom}" + (f" ({detail})" if detail else ""))
        self.axiom = axiom


class NotSubgroup(ArtifactError):
    pass


class GroupMismatch(ArtifactError):
    pass


class SubgroupMismatch(ArtifactError):
    pass


# --- character theory and modular data --------------------------------------

class NumericalDegeneracy(ArtifactError):
    pass


class NonIntegerMultiplicity(ArtifactError):
    pass


class NegativeOrNonInteger(ArtifactError):
    pass


class SizeMismatch(ArtifactError):
    pass


# --- cocycles ----------------------------------------------------------------

class CocycleIdentityFailure(ArtifactError):
    def __init__(self, k: int, l: int, m: int, detail: str = ""):
        suffix = f": {detail}" if detail else ""
        super().__init__(f"cocycle identity fails at triple ({k}, {l}, {m}){suffix}")
        self.triple = (k, l, m)


class NotAField(ArtifactError):
    pass


class NotAbelian(ArtifactError):
    pass


class NotBimultiplicative(ArtifactError):
    pass


# --- condensation / wall checks ----------------------------------------------

class ConditionMismatch(ArtifactError):
    """Two independent verification routes disagree; indicates an internal bug."""


# --- lattice ------------------------------------------------------------------

class DimensionCap(ArtifactError):
    pass


class ZeroProjection(ArtifactError):
    pass


class InvalidRibbon(ArtifactError):
    pass


class NotInSubgroup(ArtifactError):
    pass
