"""Formula fragments that tie built-in assertions to their source document.

Each anchor is a short LaTeX fragment.  ``check_anchors`` confirms that
every fragment occurs verbatim in a supplied source text.
"""

from __future__ import annotations

ANCHORS = {
    "j1_quotient": r"{\mathcal J}_{1,X}={\mathfrak m}^2",
    "jacobian_sandwich": r"((x_1^3)^7,(x_2^3)^7,(x_3^3)^7) \subset {\mathcal J}'_X \subset {\mathfrak m}^7",
    "defect_quotient": r"{\mathcal D}_X={\mathfrak m}^5",
    "conductor_pfaffian": r"{\mathcal C}_{X/Y}=p_{123}{\mathcal O}_X",
    "incidental_identity": r"Q^MM = MQ^M = p(M)\mathrm{Id}_n",
    "incidental_entries": r"q_{ij} := (-1)^{i+j}p_{ij}(M)",
    "slice_identity": r"({\mathcal J}'_Y{\mathcal O}_X)^r={\mathcal J}_{r,X} \cdot {\mathcal O}_X(-rD^Y)",
    "slice_union": r"{\mathcal I}_Y={\mathcal I}_X \cap {\mathcal I}_{C^Y}",
    "fiber_affine": r"{\mathbb A}^{(m-n)d+e}",
    "fiber_hypothesis": r"m \ge n+e \ge 2e",
    "order_additivity": r"\operatorname{ord}_{{\mathcal J}'_Y}=\operatorname{ord}_{{\mathcal J}_X}+\operatorname{ord}_{D^Y}",
    "inversion": r"\mathrm{mld}_Z(X,{\mathcal D}_X)=\mathrm{mld}_Z(A,{\mathcal I}_X^c)",
    "mld_lc": r"\mathrm{mld}_Z(X,{\mathcal I}) \ge 0",
    "jet_criterion": r"\dim \mu_X(S)+\operatorname{ord}_{{\mathcal J}_X{\mathcal I}}S > -a",
    "mld_bound": r"\mathrm{mld}_Z(X,{\mathcal I})<a",
}


def anchor(key):
    return ANCHORS[key]


def check_anchors(source_text, anchors=None):
    """Return the keys whose fragment is missing from ``source_text``."""
    anchors = ANCHORS if anchors is None else anchors
    return sorted(k for k, frag in anchors.items() if frag not in source_text)
