"""
A small ensemble experiment
===========================

Runs both strategies on two cubic graphs per size, writes the CSV files to
./demo_run and compares them per instance. Same thing from the shell:

    qaoa-pf experiment --config configs/desk_regular.json --out demo_run
    qaoa-pf compare --a demo_run --b demo_run
"""
from qaoa_pf.experiment import ExperimentConfig, compare_strategies, read_csv, run_experiment

cfg = ExperimentConfig(
    ensemble="regular", degree=3, node_counts=(6, 8), instances_per_n=2,
    p_max=5, trials_per_depth=10, strategy="both", master_seed=7,
)
report = run_experiment(cfg, "demo_run")

for row in read_csv("demo_run/pooled.csv"):
    print(row["strategy"], row["n"], row["depth"], round(float(row["mean_alpha"]), 4))

summary = compare_strategies(report, report)
print(f"fixing better on {summary.wins}, worse on {summary.losses}, tied on {summary.ties} (instance, depth) pairs")
