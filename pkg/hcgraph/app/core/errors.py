from typing import Iterable, Optional


class HcGraphError(Exception):
    """Base de toutes les erreurs hcgraph"""


class InputError(HcGraphError, ValueError):
    """Entrée mal formée: ids hors bornes, boucles, ensembles vides, fichiers invalides"""


class DomainError(HcGraphError):
    """L'objet est bien formé mais ne satisfait pas la précondition mathématique"""


class UnsupportedPrimeError(DomainError):
    def __init__(self, module: Iterable[int], reason: str = "prime module unsupported"):
        self.module = frozenset(module)
        super().__init__(f"{reason}: {sorted(self.module)}")


class OracleCapExceeded(HcGraphError):
    def __init__(self, oracle: str, size: int, cap: int, what: Optional[str] = None):
        self.oracle = oracle
        self.size = size
        self.cap = cap
        label = what or "n"
        super().__init__(f"{oracle} refused: {label}={size} exceeds cap {cap}")
