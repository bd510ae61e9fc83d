"""
Bring your own model
====================

Load a model from a description file and explain it, from Python and from
the command line.
"""

import pathlib
import subprocess
import sys

from shapmss import GameOracle, diagnose, disjoint_mss, enumerate_mss, exact_shapley, load_model, tokenize

here = pathlib.Path(__file__).parent
model = load_model(here / "ipa.model")
text = "Lovely hops, crisp finish but the body is thin."

oracle = GameOracle(model, tokenize(text))
shap = exact_shapley(oracle)
mss = enumerate_mss(oracle, 0.1)
print("prediction", oracle.prediction)
print("weights", {oracle.instance[i].surface: round(shap.weights[i], 3) for i in shap.ranking()[:5]})
print("MSS", mss.surfaces())
print(diagnose(shap, mss, disjoint_mss(oracle, 0.1)).to_dict())

# "Lovely" is capitalised and the lexicon is case sensitive, so it scores nothing

# the same explanation through the CLI
sys.stdout.flush()
subprocess.run([sys.executable, "-m", "shapmss.cli", "explain", str(here / "ipa.model"), text], check=True)
