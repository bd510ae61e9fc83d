"""
Two explanations of one prediction
==================================

A three-rule sentiment scorer, explained once by Shapley weights and once
by minimal sufficient subsets.
"""

from shapmss import GameOracle, builtin_model, enumerate_mss, exact_shapley, tokenize

# the rules fire in order: "very good" -> 0.9, "nice" -> 0.7, "good" -> 0.6, else 0
model = builtin_model("fig1_m")

for text in ["The movie was good, it was actually nice.",
             "The movie was nice, in fact, it was very good."]:
    oracle = GameOracle(model, tokenize(text))
    shap = exact_shapley(oracle)
    mss = enumerate_mss(oracle, tolerance=0.1)
    print(text)
    print("  prediction", oracle.prediction)
    for i in shap.ranking():
        if shap.weights[i]:
            print(f"  {oracle.instance[i].surface:>6} {shap.weights[i]:+.3f}")
    print("  minimal sufficient:", mss.surfaces())

# In the first review "good" gets weight although "nice" alone already
# reproduces 0.7. Shapley credits it for what it would do on its own;
# the subset view says it is not needed here.

# Both explanations query the same memoized game
print("model calls for the last review:", oracle.eval_count)
