import os

DATA_DIR = os.path.join(os.path.dirname(__file__), "registry", "data")
DEFAULT_REGISTRY_PATH = os.path.join(DATA_DIR, "identities.json")
DEFAULT_PAIRS_PATH = os.path.join(DATA_DIR, "pairs.json")

DEFAULT_ORDER = 60
DEFAULT_MAX_TERMS = 10000
DEFAULT_THREADS = 1
DEFAULT_SLOW_VERIFICATION_THRESHOLD_MS = 5000


class Status:
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error"


STATUS_TRANS = {
    Status.PASS: "Pass",
    Status.FAIL: "Fail",
    Status.ERROR: "Error",
}

# Closed-form beta sequences shipped in pairs.json, keyed by (d,e,k)
PAIR_IDS = (
    "BP123", "BP124", "BP131", "BP133", "BP135", "BP141", "BP142", "BP143", "BP144", "BP163",
    "BP164", "BP215", "BP222", "BP223", "BP224", "BP225", "BP327", "BP337", "BP417"
)

TRANSFORM_IDS = ("WQW", "VJ1", "VJ2", "VJ3", "VJ4", "VWP87")

TRANSFORM_NAMES = {
    "WQW": "q-analogue of Whipple's 8phi7 to 4phi3 transformation",
    "VJ1": "First 10phi9 to 5phi4 quadratic transformation",
    "VJ2": "Second 10phi9 to 5phi4 quadratic transformation",
    "VJ3": "First 12phi11 to 6phi5 cubic transformation",
    "VJ4": "Second 12phi11 to 6phi5 cubic transformation",
    "VWP87": "Non-terminating very-well-poised 8phi7 to 2phi1 transformation",
}

# Corrections to the commonly printed forms of the transformations
TRANSFORM_TYPOS = {
    "VJ2": "the 10W9 is printed with base q; its paired parameters need base q^2",
    "VJ3": "the 12W11 argument is printed as -a^4 q^(3n+4)/(x^3 y^3); the sign is +",
    "VJ4": "the 12W11 is printed with base q; its parameter triples need base q^3",
}

# Specializations of a used when checking closed-form betas against the definition
STANDARD_A_SPECS = ("1", "q", "q^2", "3*q")

# (d,e,k) -> (classical Bailey pair labels, identity families)
CLASSICAL_TABLE = {
    (1, 1, 1): ("H17", "Euler's pentagonal number theorem"),
    (1, 1, 2): ("B1, B3", "Rogers-Ramanujan; Gollnitz-Gordon; Lebesgue"),
    (1, 2, 2): ("G1-G3", "Rogers-Selberg; Rogers' mod 5"),
    (1, 3, 2): ("", "Bailey's mod 9 identities"),
    (2, 1, 2): ("C5, C7", "Rogers' mod 10 identities"),
    (2, 1, 3): ("C1-C4", "Rogers' mod 14 identities; Rogers' mod 20"),
    (3, 1, 4): ("J1-J6", "Dyson's mod 27 identities; further Slater entries"),
}
