"""Same data, five set similarities.

Product titles with word tokens. Tversky needs a weight for the left side;
a small one makes it forgiving when the right record carries extra words.
"""

from fractions import Fraction

from prefjoin import join_strings

left = [
    "apple iphone 12 64gb black",
    "samsung galaxy s21 ultra",
    "sony wh-1000xm4 wireless headphones",
    "logitech mx master 3 mouse",
    "dell xps 13 laptop",
]
right = [
    "Apple iPhone 12 (64GB) - Black",
    "galaxy s21 ultra samsung 5g phone",
    "Sony WH-1000XM4 headphones",
    "mx master 3 logitech",
    "dell xps 15 laptop",
    "apple iphone 13",
]

for sim, alpha in [("jaccard", None), ("dice", None), ("cosine", None), ("overlap", None), ("tversky", Fraction(1, 10))]:
    tj = join_strings(left, right, sim=sim, alpha=alpha, preference="maxgroups")
    out = tj.outcome
    print(f"{sim:8} theta* = {out.theta_star.exact_str():>12} ({float(out.theta_star):.3f}), {len(out.pairs())} pairs")
    for a, b in tj.matches():
        print(f"         {left[int(a)]!r:40} -> {right[int(b)]!r}")
