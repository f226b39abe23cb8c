"""Walk through where information sits in a few small codes.

Run with ``python demos/locate_information.py``.
"""
from qinfoloc.codefile import load_bundled
from qinfoloc.infoloc import subset_info_group, sweep
from qinfoloc.oracle import DenseCode, verify_isomorphism


def show(name, subset):
    code = load_bundled(name).encode()
    report = subset_info_group(code, subset)
    one_based = ",".join(str(j + 1) for j in subset)
    gens = ", ".join(g.label() for g in report.generators) or "identity"
    print(f"{name}  B={{{one_based}}}  case={report.case()}  |G_B|={report.member_count}  generated by {gens}")
    for rep, c in report.classification.items():
        if c.status.name == "PARTIAL":
            print(f"    {rep.label()} is partially present (power {c.power})")
    return code, report


# any two carriers of the five-qudit code see nothing, any three see everything
for subset in [(0, 1), (0, 1, 2)]:
    show("five_qudit_d3", subset)

# the Steane code: 7 of the 35 triples hold the logical qubit
summary = sweep(load_bundled("steane").encode(), 3)
hits = [B for B, r in summary.reports.items() if r.case() == "all_present"]
print("steane triples holding everything:", [tuple(j + 1 for j in B) for B in hits])

# D = 4 refinement: X on the logical qudit is absent from carrier 2, but X^2 is present
show("refinement_d4_z1z2sq", (1,))

# the dense oracle agrees with the symbolic answer
code, report = show("four_two_two_d2", (0, 2))
iso = verify_isomorphism(DenseCode(code), (0, 2), report.members)
print(f"dense check: product error {iso.max_product_error:.1e}, rank of traced projector {iso.projector_rank}")
