import math

# Limit parameters of des(s(pi_n)) + 1, closed forms
DEFANT_MU = 3.0 - math.e
DEFANT_SIGMA2 = 2.0 + 2.0 * math.e - math.e**2

# Radicand of the Defant series: 1 - 4z + 2yz + y^2 z^2, stored as (m, n, value)
DEFANT_RADICAND_TERMS = ((0, 0, 1.0), (0, 1, -4.0), (1, 1, 2.0), (2, 2, 1.0))

# Exit codes of the command line tool
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2
