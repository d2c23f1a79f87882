"""Command matrix shared by the CLI golden tests and the acceptance suite."""

import os

DATA = os.path.join(os.path.dirname(__file__), "data")
GOLDEN = os.path.join(os.path.dirname(__file__), "golden")

GF2 = '{"ring":"GF","p":2}'
GF4 = '{"ring":"GF","p":2,"r":2}'
GF9 = '{"ring":"GF","p":3,"r":2}'
POLY2 = '{"ring":"PolyRing","p":2}'
POLY3 = '{"ring":"PolyRing","p":3}'
RAT2 = '{"ring":"RatFunc","p":2}'


def data(name):
    return os.path.join(DATA, name)


MATRIX = [
    ("skew_mul", ["skew", "mul", "--ring", POLY2, "F", "x"]),
    ("skew_mul_rat", ["skew", "mul", "--ring", RAT2, "(t+1)*F^2", "F/t"]),
    ("skew_divr", ["skew", "divr", "--ring", GF4, "F^2+w*F+1", "F+w"]),
    ("skew_divr_rat", ["skew", "divr", "--ring", RAT2, "F", "t*F"]),
    ("skew_divl", ["skew", "divl", "--ring", GF4, "F^2+w*F", "F+1"]),
    ("skew_divl_notperfect", ["skew", "divl", "--ring", RAT2, "F", "t*F"]),
    ("skew_gcrd", ["skew", "gcrd", "--ring", GF9, "(F+w)*(F^2+1)", "(F+1)*(F^2+1)"]),
    ("ore_witness_left", ["ore", "witness", "--side", "left", "--ring", POLY3, "x", "x*F^2"]),
    ("ore_witness_right", ["ore", "witness", "--side", "right", "--ring", POLY2, "x", "F+1"]),
    ("ore_search_fail", ["ore", "search", "--maxdeg", "8", "F", "t*F", "--ring", RAT2]),
    ("ore_search_f4", ["ore", "search", "--maxdeg", "2", "--ring", GF4, "F", "F^2"]),
    ("ore_localize", ["ore", "localize", "--f", "x", "--ring", POLY2, "F", "x"]),
    ("ore_localize_bad", ["ore", "localize", "--f", "x", "--ring", POLY2, "F", "x+1"]),
    ("ore_dfrac_add", ["ore", "dfrac", "--op", "add", "--ring", GF2, "1", "F", "1", "F"]),
    ("ore_dfrac_mul", ["ore", "dfrac", "--op", "mul", "--ring", GF4, "1", "F+1", "F+1", "1"]),
    ("ore_dfrac_inv", ["ore", "dfrac", "--op", "inv", "--ring", GF9, "F+w", "F^2"]),
    ("koszul_present", ["koszul", "present", data("nilpotent.json")]),
    ("koszul_check", ["koszul", "check", "--bound", "6", data("nilpotent.json")]),
    ("koszul_check_f4", ["koszul", "check", data("f4_module.json")]),
    ("ideal_reduce", ["ideal", "reduce", "--ring", GF2, "F^3", "F^2"]),
    ("ideal_reduce_unit", ["ideal", "reduce", "--ring", GF2, "F", "F+1"]),
    ("ideal_filtration", ["ideal", "filtration", "--dbound", "3", "--ring", GF2, "F^2"]),
    ("ideal_coker", ["ideal", "coker", "--dbound", "6", "--ring", GF2, "F^2"]),
    ("ideal_coker_unit", ["ideal", "coker", "--dbound", "4", "--ring", GF4, "1"]),
    ("cartier_analyze_nil", ["cartier", "analyze", data("nilpotent.json")]),
    ("cartier_analyze_mixed", ["cartier", "analyze", data("mixed.json")]),
    ("cartier_analyze_f4", ["cartier", "analyze", data("f4_block.json")]),
    ("cartier_delta", ["cartier", "delta", "--ring", '{"ring":"Points","p":2,"count":3}', "--point", "1"]),
    ("k0_class", ["k0", "class", data("mixed.json")]),
    ("k0_trace", ["k0", "trace", data("mixed.json")]),
    ("k0_ses", ["k0", "ses", "--samples", "40", "--seed", "7", "--ring", '{"ring":"Points","p":3,"count":4}']),
    ("k0_qdrank", ["k0", "qdrank", "--ring", GF4, "--relations", '[["F","1"]]', "--scrambles", "5", "--seed", "11"]),
    ("k0_qdrank_free", ["k0", "qdrank", "--n", "2"]),
    ("k0_chow", ["k0", "chow", "--n", "2", "--q", "3"]),
    ("error_syntax", ["skew", "mul", "--ring", GF2, "F+", "F"]),
    ("error_symbol", ["skew", "mul", "--ring", GF2, "x", "F"]),
    ("error_usage", ["skew", "mul", "--ring", GF2, "F"]),
]
