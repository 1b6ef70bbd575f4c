"""String algebra laboratory.

Exact linear algebra over finite fields underneath quiver representations:
string/band modules, normalized Sylvester rank functions, pp dimensions,
Benjamini-Schramm statistics of string graphs, hyperfinite tilings with
certificates, and the constant-size module parameter tester.
"""

try:
    from ._stralg import *  # installed wheel layout
except ImportError:  # build-tree layout: extension on PYTHONPATH
    from _stralg import *

__all__ = [
    "Algebra",
    "Module",
    "StralgError",
    "rk",
    "profile",
    "sylvester_audit",
    "pp_dim",
    "string_count",
    "right_endpoint_count",
    "ball_stats",
    "ball_stats_sampled",
    "tile",
    "tile_jordan",
    "epsilon_isomorphism",
    "epsilon_tiles",
    "catalog",
    "gen_number",
    "indep_number",
    "weight",
    "hom_l",
    "hom_r",
    "build_and_run_tester",
    "random_string_sum",
]
