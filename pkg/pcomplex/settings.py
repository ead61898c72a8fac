# Default settings.  Settings can be overridden by the CLI's `cli_config.yml` file
# and then by command line flags.
settings = {
    "debug": False,
    "progress": False,
    "threads": 1,
    "quiet": False,
    "caps": {
        "elements": 10_000_000,
        "orbit": 1_000_000,
        "chains": 1_000_000,
        "matrix": 50_000_000,
        "materialize": 100_000,
        "p_group_order": 1024,
        "subgroups": 1_000_000,
        "relator_length": 10_000,
    },
}

# Where each cap can be raised from: config key under `analysis.run` and CLI flag.
CAP_SOURCES = {
    "elements": ("run.caps.elements", "--cap-elements"),
    "orbit": ("run.caps.orbit", "--cap-orbit"),
    "chains": ("run.caps.chains", "--cap-chains"),
    "matrix": ("run.caps.matrix", "--cap-matrix"),
    "materialize": ("run.caps.materialize", "--cap-materialize"),
    "p_group_order": ("run.caps.p_group_order", "--cap-p-group"),
    "subgroups": ("run.caps.subgroups", "--cap-subgroups"),
    "relator_length": ("run.caps.relator_length", "--max-relator-length"),
}


def cap(name: str) -> int:
    return settings["caps"][name]
