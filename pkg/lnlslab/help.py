"""Help messages for CLI commands"""
# pylint: disable=line-too-long
#!/usr/bin/env python3

from lnlslab.utils.io_utils import GOLDEN_TABLES

TABLE_NAMES = " or ".join([f"'{item}'" for item in GOLDEN_TABLES])

# options shared by every command that runs over half-widths
common_options = {
    "config": (
        "Specify the path to the `config.yml` using this option. When omitted, "
        "the built-in defaults are used."
    ),
    "q": (
        "Comma separated half-widths Q, e.g. `--q 10,50,100`. Every value must be "
        "positive. Can be combined with `--q-grid`."
    ),
    "q_grid": (
        "A log-spaced grid of half-widths given as `min:max:count`, endpoints included."
    ),
    "n": (
        "Number of Gauss-Legendre nodes used for every Q. When omitted, the rule "
        "N(Q) = n_slope * Q + n_offset capped at n_cap from the `(solver)` section "
        "of the configuration is used."
    ),
    "format": (
        "Output format, 'csv' or 'json'. You can either explicitly pass the format "
        "here or provide it in the `config.yml` file as a value for the `(sweep > format)` key."
    ),
    "out": (
        "Path of the file the results are written to. When omitted, the results are "
        "printed on standard output."
    ),
    "workers": (
        "Size of the worker pool used for sweeps over Q. You can either explicitly pass "
        "it here or provide it in the `config.yml` file as a value for the `(sweep > workers)` key."
    ),
    "profile": (
        "Tolerance profile, 'default' or 'strict'. The strict profile divides every "
        "tolerance by `(tolerances > strict_factor)`."
    ),
}

# `lnlslab solve` and `lnlslab sweep`
solver_commands = {
    "solve": {
        "short_help": (
            "Solve the rescaled ground-state equation at one or more half-widths and "
            "report rho0, D, E_inner, C_eff and the condition estimate per Q."
        ),
    },
    "sweep": {
        "short_help": (
            "Solve at every Q of a list or grid and emit the sweep records used by the "
            "asymptotic fits. Records are sorted by Q whatever the worker count."
        ),
    },
}

# `lnlslab spectrum`
spectral_commands = {
    "spectrum": {
        "short_help": (
            "Dense spectrum of the Lorentzian kernel truncated to [-Q, Q]: leading "
            "eigenvalues, gaps, log Fredholm determinant and trace residual per Q."
        ),
        "top_k": "Number of leading eigenvalues reported per Q.",
        "full": (
            "Emit every eigenvalue, one row per (Q, index), instead of the summary rows."
        ),
    },
}

# `lnlslab resurgence`
asymptotics_commands = {
    "resurgence": {
        "short_help": (
            "Fit the subtracted peak density to inverse powers of Q with log corrections "
            "and report the coefficients with their range-stability flags."
        ),
        "n_max": (
            "Number of inverse powers in the fit. Defaults to `(resurgence > n_max)`."
        ),
        "svd_threshold": (
            "Relative singular-value cut of the fit. Defaults to `(resurgence > svd_threshold)`."
        ),
    },
}

# `lnlslab tables`, `lnlslab checks` and `lnlslab plotdata`
report_commands = {
    "tables": {
        "short_help": (
            f"Reproduce a reference table ({TABLE_NAMES}) and compare it cell by cell "
            "with the golden values shipped with the package. Exits with status 1 "
            "when any cell is outside its tolerance."
        ),
        "out": (
            "Path of the comparison file. When omitted, the file is written to "
            "`(sweep > output_folder)` as `<name>_comparison.<format>`."
        ),
    },
    "checks": {
        "short_help": (
            "Run the registered identity checks (energy identity, Love duality, digamma "
            "and profile integrals, Wiener-Hopf factorisation, trace identity, instanton "
            "zero and more). Exits with status 1 when any check fails."
        ),
        "name": "Run only the named check. Can be given several times.",
    },
    "plotdata": {
        "short_help": "Columnar data files for plotting.",
        "profile": "(xi/Q, rho) at the quadrature nodes per Q.",
        "inner": "(xi, rho, inner, outer) on a uniform grid at one Q.",
        "edge": "(s, rho(Q - s)/rho(Q - s_ref)) per Q.",
        "s_ref": "Depth below the edge at which every edge curve equals one.",
        "spectrum": "(Q, Delta_0, Delta_1, Q Delta_0) per Q.",
        "sweep": "Sweep records (Q, rho0, D, E_inner, C_eff) per Q.",
        "wh": "Wiener-Hopf factors and identity residuals on a real momentum grid.",
        "p_range": "Momentum grid given as `min:max:count`, uniformly spaced.",
    },
}
