"""Self-describing text output: profiles, spectra, index reports, sweep CSV.

One line-oriented format serves every artifact:

    henonlab/1 <kind>
    [manifest]
    key: value
    [scalars]
    key: value
    [array <name> <length>]
    value
    ...
    [end]

Floats are written with ``repr`` (shortest round-trip decimal), so files are
diff-friendly and parse back bit-exactly.  Every file embeds its manifest:
the command, the fully resolved configuration, the tool version, the wall
time, and a hash of the resolved configuration — identical hashes imply
identical data sections.

The sweep CSV has one alpha per row and a fixed column order, given by
:func:`sweep_csv_columns`; empty string marks a column not applicable to the
run (K bound for m = 1, Morse data for N = 2, best constant for m >= 2).
"""

import hashlib
import io

import numpy as np

FORMAT_VERSION = "henonlab/1"
TOOL_VERSION = "0.1.0"


def format_value(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def parse_value(s: str):
    s = s.strip()
    if s == "true":
        return True
    if s == "false":
        return False
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def config_hash(config: dict) -> str:
    """sha256 over the sorted resolved configuration; wall time excluded so
    the hash is a pure function of the inputs."""
    lines = sorted(f"{k}={format_value(v)}" for k, v in config.items())
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()


def build_manifest(command: str, config: dict, wall_time_s: float) -> dict:
    manifest = {"command": command, "tool_version": TOOL_VERSION}
    manifest.update(config)
    manifest["input_hash"] = config_hash(config)
    manifest["wall_time_s"] = wall_time_s
    return manifest


def write_report(path, kind: str, manifest: dict, scalars: dict, arrays: dict):
    buf = io.StringIO()
    buf.write(f"{FORMAT_VERSION} {kind}\n")
    buf.write("[manifest]\n")
    for k, v in manifest.items():
        buf.write(f"{k}: {format_value(v)}\n")
    buf.write("[scalars]\n")
    for k, v in scalars.items():
        buf.write(f"{k}: {format_value(v)}\n")
    for name, arr in arrays.items():
        arr = np.asarray(arr)
        buf.write(f"[array {name} {arr.size}]\n")
        for x in arr.ravel():
            buf.write(format_value(x) + "\n")
    buf.write("[end]\n")
    with open(path, "w") as fh:
        fh.write(buf.getvalue())


def read_report(path):
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith(FORMAT_VERSION):
        raise ValueError(f"not a {FORMAT_VERSION} file: {path}")
    kind = lines[0].split(maxsplit=1)[1]
    manifest, scalars, arrays = {}, {}, {}
    section = None
    array_name = None
    array_values = None
    for line in lines[1:]:
        if line == "[end]":
            break
        if line.startswith("[array "):
            if array_name is not None:
                arrays[array_name] = np.array(array_values)
            _, array_name, _ = line.strip("[]").split()
            array_values = []
            section = "array"
            continue
        if line in ("[manifest]", "[scalars]"):
            if array_name is not None:
                arrays[array_name] = np.array(array_values)
                array_name = None
            section = line.strip("[]")
            continue
        if section == "array":
            array_values.append(parse_value(line))
        elif section == "manifest":
            k, _, v = line.partition(":")
            manifest[k.strip()] = parse_value(v)
        elif section == "scalars":
            k, _, v = line.partition(":")
            scalars[k.strip()] = parse_value(v)
    if array_name is not None:
        arrays[array_name] = np.array(array_values)
    return {"kind": kind, "manifest": manifest, "scalars": scalars, "arrays": arrays}


def profile_payload(profile):
    """(scalars, arrays) sections for a solved profile file."""
    scalars = {
        "variable": profile.variable,
        "p": profile.p,
        "weight_power": profile.weight_power,
        "amplitude": profile.amplitude,
        "nodal_sets": profile.m,
    }
    arrays = {
        "nodes": profile.nodes,
        "values": profile.values,
        "derivs": profile.derivs,
        "zeros": profile.zeros,
        "extrema_locs": profile.extrema_locs,
        "extrema_vals": profile.extrema_vals,
    }
    return scalars, arrays


def sweep_csv_columns(m: int, N: int) -> list:
    """The documented, fixed column order of sweep CSV files."""
    cols = ["alpha", "M", "amplitude_v", "gap_v", "gap_dv", "plateau_gap"]
    for i in range(1, m + 1):
        cols += [f"r_zero_{i}", f"t_zero_{i}", f"zero_diag_{i}", f"n_scaled_{i}"]
    for i in range(1, m + 1):
        cols += [f"lam_{i}", f"lam_hat_{i}", f"lam_hat_over_a2_{i}", f"eigen_gap_{i}"]
    cols += ["morse_total", "J", "bound_J", "K", "bound_K",
             "level_C", "nehari_resid", "grad_resid", "ode_resid",
             "best_scaled", "best_gap", "error"]
    return cols


def write_sweep_csv(path, report, manifest: dict):
    """CSV (one alpha per row, fixed column order) with a manifest preamble
    in '# key: value' comment lines."""
    cols = sweep_csv_columns(report.config.m, report.config.N)
    with open(path, "w") as fh:
        for k, v in manifest.items():
            fh.write(f"# {k}: {format_value(v)}\n")
        fh.write(",".join(cols) + "\n")
        for row in report.rows:
            fh.write(",".join(format_value(row.get(c, "")) for c in cols) + "\n")
