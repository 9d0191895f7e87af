"""
Gradually visible perturbations
===============================

``E_alpha`` blends the part of a Gaussian draw that the sampled rows and
columns cannot see with the part they can, weighted by ``alpha``. The CUR
error grows with the visible weight and levels off once the visible part
dominates.
"""

from pathlib import Path

from curtangent import ExperimentConfig, Series, run_visibility_experiment, write_csv, write_svg_loglog

out = Path("demo_output")
out.mkdir(exist_ok=True)
cfg = ExperimentConfig(seed=0)
records = run_visibility_experiment(cfg)
write_csv(records, out / "visibility.csv")

series = []
for eps in cfg.eps_fixed:
    series.append(Series(f"CUR error, eps={eps:g}", "alpha", "err_cur", {"epsilon": eps}))
    series.append(Series(f"prediction, eps={eps:g}", "alpha", "pred_cur", {"epsilon": eps}, dashed=True))
write_svg_loglog(records, series, out / "visibility.svg", "visibility sweep", "alpha", "CUR recovery error")

for eps in cfg.eps_fixed:
    row = [r for r in records if r.epsilon == eps]
    print(f"eps={eps:g}: err_cur from {row[0].err_cur:.2e} (alpha={row[0].alpha:.0e})"
          f" to {row[-1].err_cur:.2e} (alpha={row[-1].alpha:g})")
