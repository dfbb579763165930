'''
Description: Shared constants for the SuperCtrl layers (parities, verdict labels,
exit codes, numeric tolerances)
'''

#========[ PARITY ]==================================================================
EVEN = 0
'''Z2 degree of commuting elements'''
ODD = 1
'''Z2 degree of anticommuting elements'''
MIXED = "mixed"
'''Marker for an element that is not homogeneous'''
PARITY_NAMES = {EVEN: "even", ODD: "odd"}
'''Lower-case parity labels used in spec files and reports'''

#========[ GRASSMANN ]===============================================================
DEFAULT_GENERATORS = 4
'''Default number L of Grassmann generators for a session'''
MAX_GENERATORS = 10
'''Upper bound for L: the product table has 3^L entries and every stack holds 2^L matrices'''
PRODUCT_CHUNK = 1 << 14
'''Monomial products evaluated per batch in stack_matmul'''
GENERATOR_PREFIX = "x"
'''Prefix of generator names in the textual form, eg: 3 + 2*x1^x2'''
WEDGE = "^"
'''Separator between generators inside one monomial'''

#========[ SUPERMATRIX ]=============================================================
MODE_ANALYSIS = "analysis"
'''Exact rational entries, parity decided by block position'''
MODE_SIMULATION = "simulation"
'''Float coefficient stacks over the Grassmann monomials'''
EXP_SCALE_NORM = 0.5
'''sm_exp scales tA until its norm is at most this value'''
EXP_TAYLOR_ORDER = 12
'''Order of the truncated series used by sm_exp'''

#========[ CONTROL ]=================================================================
NOT_TRANSITIVE = "NotTransitive"
TRANSITIVE_NOT_DECIDED = "TransitiveNotDecided"
LOCALLY_CONTROLLABLE = "LocallyControllable"
CLASSIFICATIONS = (NOT_TRANSITIVE, TRANSITIVE_NOT_DECIDED, LOCALLY_CONTROLLABLE)
'''Verdict lattice, weakest first'''

ANNOTATIONS = {
    NOT_TRANSITIVE: "not transitive: LSARC fails",
    TRANSITIVE_NOT_DECIDED: "transitive by LSARC but not locally controllable",
    LOCALLY_CONTROLLABLE: "locally controllable by super ad-rank condition",
}
'''Reading of each classification in the language of the worked examples'''

#========[ CATALOG ]===============================================================
STATUS_PASS = "pass"
'''Computed value equals the printed one'''
STATUS_FLAGGED = "flagged"
'''Mismatch covered by a documented discrepancy'''
STATUS_FAIL = "fail"
'''Undocumented mismatch or broken invariant'''

#========[ FLOWS ]===================================================================
STEPS_PER_SEGMENT = 64
'''Minimum RK4 steps per schedule segment'''
STEPS_PER_UNIT_TIME = 64
'''Step size never exceeds 1/STEPS_PER_UNIT_TIME'''
FLOW_TOLERANCE = 1e-8
'''Residual bound for sampled conjugation invariance'''
FLOW_SAMPLE_TIMES = (1.0, -1.0, 0.5, -0.5)
'''Times at which hull invariance under conjugation is sampled'''

#========[ CLI ]=====================================================================
EXIT_OK = 0
'''LocallyControllable, or a successful non-check command'''
EXIT_INPUT_ERROR = 1
'''Malformed input, missing realization, failing catalog verification'''
EXIT_TRANSITIVE_NOT_DECIDED = 2
EXIT_NOT_TRANSITIVE = 3

EXIT_CODES = {
    LOCALLY_CONTROLLABLE: EXIT_OK,
    TRANSITIVE_NOT_DECIDED: EXIT_TRANSITIVE_NOT_DECIDED,
    NOT_TRANSITIVE: EXIT_NOT_TRANSITIVE,
}

ENV_PREFIX = "SUPERCTRL_"
'''Prefix shared by every environment variable the tool reads'''
