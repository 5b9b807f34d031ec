"""JSON schemas for the machine-readable outputs of the command-line tool."""

RATIONAL = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}]}

CHECK = {
    "type": "object",
    "required": ["valid", "coherent", "n", "r"],
    "properties": {
        "valid": {"type": "boolean"},
        "coherent": {"type": "boolean"},
        "n": {"type": "integer"},
        "r": {"type": "integer"},
        "pairing": {"type": "array", "items": {"type": "integer"}},
        "witness": {"type": "array"},
    },
}

TENSOR = {
    "type": "object",
    "required": ["n", "r", "pairing", "diagonal", "k", "p"],
    "properties": {
        "n": {"type": "integer"},
        "r": {"type": "integer"},
        "pairing": {"type": "array", "items": {"type": "integer"}},
        "diagonal": {"type": "array", "items": {"type": "integer"}},
        "k": {"type": "array", "items": {"type": "integer"}},
        "p": {"type": "array"},
    },
}

ANALYZE = {
    "type": "object",
    "required": ["tensor", "flags", "constituents", "identities"],
    "properties": {
        "tensor": TENSOR,
        "flags": {"type": "object"},
        "constituents": {"type": "array", "items": {"type": "object"}},
        "identities": {"type": "array", "items": {"type": "string"}},
    },
}

WL = {
    "type": "object",
    "required": ["rounds", "rank_history", "n", "r"],
    "properties": {
        "rounds": {"type": "integer"},
        "rank_history": {"type": "array", "items": {"type": "integer"}},
        "n": {"type": "integer"},
        "r": {"type": "integer"},
        "coherent_input": {"type": "boolean"},
    },
}

DISTINGUISH = {
    "type": "object",
    "required": ["dmin", "d_by_color", "dist_table"],
    "properties": {
        "dmin": {"type": "integer"},
        "d_by_color": {"type": "object"},
        "dist_table": {"type": "object"},
        "greedy_set": {"type": "array", "items": {"type": "integer"}},
        "greedy_bound": {"type": "number"},
    },
}

SPECTRUM_ENTRY = {
    "type": "object",
    "required": ["color", "k", "nontrivial", "xi", "exact"],
    "properties": {
        "k": {"type": "integer"},
        "nontrivial": {"type": "array", "items": {"type": "number"}},
        "xi": {"type": "number"},
        "exact": {"type": "boolean"},
        "symmetrized": {"type": "boolean"},
    },
}

SPECTRUM = {"type": "array", "items": SPECTRUM_ENTRY}

GEOMETRY = {
    "type": "object",
    "required": ["color", "m", "metsch", "params"],
    "properties": {
        "color": {"type": "array", "items": {"type": "integer"}},
        "m": {"type": "integer"},
        "metsch": {"type": "boolean"},
        "params": {"type": "object"},
        "lines": {"type": "array"},
        "per_vertex_max": {"type": "integer"},
        "root_graph": {"type": ["object", "null"]},
    },
}

STEP = {
    "type": "object",
    "required": ["rule", "anchor", "params", "hypotheses", "holds", "conclusion"],
    "properties": {
        "rule": {"type": "string"},
        "anchor": {"type": "string"},
        "params": {"type": "object"},
        "hypotheses": {"type": "object"},
        "holds": {"type": "boolean"},
        "conclusion": {"type": "string"},
        "bound": RATIONAL,
    },
}

CERTIFICATE = {
    "type": "object",
    "required": ["input_hash", "branch", "steps", "verdict"],
    "properties": {
        "input_hash": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "n": {"type": "integer"},
        "branch": {"type": "string"},
        "steps": {"type": "array", "items": STEP},
        "verdict": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["MotionAtLeast", "Exceptional", "Inconclusive"]},
                "detail": {"type": "string"},
                "bound_num": {"type": "integer"},
                "bound_den": {"type": "integer", "minimum": 1},
                "fraction_of_n": RATIONAL,
            },
        },
        "warnings": {"type": "array", "items": {"type": "string"}},
    },
}

MOTION = {
    "type": "object",
    "required": ["order", "motion", "exact", "orbit_count", "generators"],
    "properties": {
        "order": {"type": "integer"},
        "motion": {"type": "integer"},
        "exact": {"type": "boolean"},
        "orbit_count": {"type": "integer"},
        "generators": {"type": "array"},
        "certified_bound": RATIONAL,
    },
}

BY_COMMAND = {
    "check": CHECK,
    "analyze": ANALYZE,
    "wl": WL,
    "distinguish": DISTINGUISH,
    "spectrum": SPECTRUM,
    "geometry": GEOMETRY,
    "certify": CERTIFICATE,
    "motion": MOTION,
}
