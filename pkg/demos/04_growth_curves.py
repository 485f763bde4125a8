"""Two growth curves: the catalog oracle on F_2 and the certified pipeline bound on the Sanov group."""
from rfcert.groupfile import load_bundled
from rfcert.rfgrowth import OracleSource, PipelineSource, default_catalog, fit_polynomial, rf_curve

oracle = rf_curve(OracleSource(2, default_catalog()), 4)
pipeline = rf_curve(PipelineSource(load_bundled("sanov")), 6)

print(" n  oracle  pipeline")
for n in range(1, 7):
    o = dict(oracle).get(n, "")
    print(f"{n:>2}  {o!s:>6}  {dict(pipeline)[n]:>8}")

C, d, resid = fit_polynomial(pipeline)
print(f"\npipeline fit: {C:.3g} * n^{d:.3f}, worst log residual {resid:.3f}")
print("The oracle always sits below the pipeline: the pipeline only promises some quotient.")
