"""Compare edge diffraction fringes with and without the nonlinearity.

A wide Gaussian beam is cut in half by a hard aperture and released.
Fresnel-like fringes spill into the lit region. Evolving the identical
initial state under b = 0 and b > 0 and measuring fringe contrast shows
the nonlinear run keeping its first fringe at least as sharp: an
interference-visibility difference that a measurement could target.

This demo drives the scenario through the config layer and leaves the
same results.csv / snapshots.csv / manifest.txt a command-line run
would, so the output directory is ready for external plotting.
"""

from lognls import parse_config, run_scenario, write_outputs

CONFIG = """\
[scenario]
name = knife_edge
T = 2.0
envelope_width = 12.0

[output]
dir = out/edge_diffraction
"""


def main():
    cfg = parse_config(CONFIG)
    report = run_scenario(cfg)

    print("fringe contrast past the edge, linear vs nonlinear run:\n")
    print(f"{'fringe':>7} {'x (linear)':>11} {'contrast lin':>13} {'contrast nl':>12}")
    for i in (1, 2, 3):
        print(f"{i:7d} {report.metrics[f'x_max_linear_{i}']:11.3f} "
              f"{report.metrics[f'contrast_linear_{i}']:13.4f} "
              f"{report.metrics[f'contrast_nonlinear_{i}']:12.4f}")

    margin = report.metrics["first_fringe_margin"]
    print(f"\nfirst-fringe margin (nonlinear - linear): {margin:+.4f}")

    paths = write_outputs(report, cfg.output.dir)
    print("wrote " + ", ".join(str(p) for p in paths.values()))


if __name__ == "__main__":
    main()
