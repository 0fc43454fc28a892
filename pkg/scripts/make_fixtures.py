"""Write the worked-example posets to data/*.poset."""

import argparse
from pathlib import Path

from kleeneposet import completion, constructions, fixtures as fx
from kleeneposet.fileformat import entry, format_file


def build() -> dict[str, list]:
    B6 = fx.bowtie()
    P_ab = constructions.ps_construct(B6.poset, ["a", "b"])
    dm_left = completion.dm_ps_compare(B6.poset, ["a", "b"])
    chain3 = fx.involutive(["0", "m", "1"], [("0", "m"), ("m", "1")], [("0", "1"), ("m", "m")])
    chain4 = fx.involutive(["0", "p", "q", "1"], [("0", "p"), ("p", "q"), ("q", "1")],
                           [("0", "1"), ("p", "q")])
    L = fx.l_product()
    return {
        "bowtie": [entry("BOWTIE", B6, {"S": B6.poset.subset(["a", "b"])}),
                   entry("P_ab_BOWTIE", P_ab)],
        "vee_tail": [entry("VEE", fx.vee_tail(), {"S": fx.vee_tail().subset(["c", "d"])})],
        "k1_l1": [entry("K1", fx.k1()), entry("L1", fx.l1(), {"S1": fx.l1().subset(fx.S1)}),
                  entry("K2", fx.k2()), entry("L2", fx.l2(), {"S2": fx.l2().subset(fx.S2)})],
        "product": [entry("K", fx.k_product()), entry("L", L, {"S": L.subset(fx.s_product())})],
        "subproducts": [entry("Ks", fx.k_s()),
                        entry("Ls", fx.l_s(), {"S": fx.l_s().subset(fx.s_product())}),
                        entry("K0", fx.k_0()), entry("L0", fx.l_0(), {"S0": fx.l_0().subset(fx.S0)})],
        "dm_of_ps": [entry("DM_P_ab_BOWTIE", dm_left.left)],
        "ps_of_dm": [entry("P_La_Lb_DM_BOWTIE", dm_left.right)],
        "glued_n2": [entry("GLUED_2", fx.glued_diamonds(2))],
        "glued_n3": [entry("GLUED_3", fx.glued_diamonds(3))],
        "chains": [entry("C3", chain3), entry("C4", chain4), entry("C2", fx.k2())],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, entries in build().items():
        path = out / f"{name}.poset"
        path.write_text(format_file(entries), encoding="utf-8")
        print(f"wrote {path} ({', '.join(e.name for e in entries)})")


if __name__ == "__main__":
    main()
