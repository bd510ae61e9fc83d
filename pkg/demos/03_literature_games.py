"""
Textbook games
==============

min and max over numeric inputs, where the Shapley split has a closed form.
"""

from shapmss import GameOracle, Instance, builtin_model, enumerate_mss, exact_shapley

for name, values in [("min2", [1, 3]), ("max3", [5, 4, 0])]:
    oracle = GameOracle(builtin_model(name), Instance.from_values(values))
    shap = exact_shapley(oracle)
    print(name, values, "->", oracle.prediction)
    print("   weights", shap.weights)
    print("   minimal sufficient", enumerate_mss(oracle, 0.1).surfaces())

# max(5, 4, 0): x1 only wins by 1 once x2 is in, so it takes 3 and x2 takes 2.
# The subset view only needs x1.
