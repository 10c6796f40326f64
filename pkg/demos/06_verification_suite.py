"""The lemma verification suite: margins, fitted constants, negative controls.

Each quantitative statement of the calculus is a margin-reporting check.
Constants the theory merely asserts to exist are fitted on finite ranges;
checks fail when the fit does not extend, and every check has a designated
corruption that must break it.
"""

from monogenic.verify import (
    CORRUPTION_TARGETS,
    VerifyConfig,
    run_all,
    summary_table,
)

reports = run_all(VerifyConfig())
print(summary_table(reports))
print(f"\n{sum(r.passed for r in reports)}/{len(reports)} checks passed")

# a negative control: corrupting the convolution must break the CK oracle
corrupted = run_all(
    VerifyConfig(corruption="dropped-convolution-term", only=("ck-product-oracle",))
)
print("\nwith a dropped convolution term:")
print(summary_table(corrupted))

print("\ndesignated corruptions:")
for corruption, target in sorted(CORRUPTION_TARGETS.items()):
    print(f"  {corruption:28s} breaks {target}")
