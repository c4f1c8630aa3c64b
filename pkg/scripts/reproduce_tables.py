"""Print every published distribution next to the enumerated one, plus the graph examples."""

from twoweight import claims
from twoweight.codes import CodeSpec, divisors, parse_paper, weight_distribution_enum
from twoweight.graphs import coset_graph, latin_square_classify, verify_srg
from twoweight.puncture import punctured_code, punctured_distribution


def mark(ok):
    return "ok " if ok else "DIFF"


def main():
    print("== d = 1, h = 3")
    for p, text in claims.PRIMITIVE_H3.items():
        got = weight_distribution_enum(CodeSpec(p, 3, 1), use_orbits=True)
        print(f"{mark(got.entries == parse_paper(text).entries)} p={p:<3} {got.paper()}")

    print("== d > 1, h = 3 (m > p - 1)")
    for p, texts in claims.IRREDUCIBLE_H3.items():
        printed = {parse_paper(t).entries for t in texts}
        for d in divisors(p * p - 1):
            spec = CodeSpec(p, 3, d)
            if d == 1 or spec.degenerate or spec.m == p - 1:
                continue
            got = weight_distribution_enum(spec, use_orbits=True)
            print(f"{mark(got.entries in printed)} p={p:<3} d={d:<3} m={spec.m:<3} {got.paper()}")

    print("== punctured")
    for (p, h, d), text in claims.PUNCTURED.items():
        got = punctured_distribution(punctured_code(CodeSpec(p, h, d)))
        print(f"{mark(got.entries == parse_paper(text).entries)} p={p} h={h} d={d} {got.paper()}  printed {text}")

    print("== graphs")
    for (p, h, d), c in claims.GRAPHS.items():
        spec = CodeSpec(p, h, d)
        srg = verify_srg(coset_graph(spec))
        ls = latin_square_classify(srg, spec)
        ok = (srg.v, srg.eta, (srg.r, srg.s)) == (c["v"], c["eta"], c["eigenvalues"])
        print(
            f"{mark(ok)} p={p} h={h} d={d} ({srg.v}, {srg.eta}, {srg.lam}, {srg.mu}) "
            f"eig {srg.r}^{srg.f} {srg.s}^{srg.g}  printed {c['eigenvalues']}  "
            f"latin(N=p^h, M=p+1)={ls.latin_square} fit={ls.general_match}"
        )


if __name__ == "__main__":
    main()
