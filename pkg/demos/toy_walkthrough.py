"""Walk through the five-by-five toy join by hand.

Each record is a bag of single characters. We look at every distinct pair
similarity, score the join at each one, and then let the engine pick.
"""

from prefjoin import EngineConfig, SimilarityMeasure, TokenizerConfig, build_corpus, join_at_star, oracle_run, run

left = ["db_ms", "vldb", "dbs", "db", "dblp_"]
right = ["dbms_", "dbms", "pvldb", "vl_db", "_db"]

corpus = build_corpus(left, right, TokenizerConfig("qgrams", q=1), left, right)
jaccard = SimilarityMeasure("jaccard")

# brute force: one row per distinct similarity, highest first
table = oracle_run(corpus.R, corpus.S, jaccard)
print("theta    groups  outer-score  |join|")
for row in table.per_threshold:
    print(f"{float(row.theta):.3f}    {row.h_c:>6}  {row.h_o:>11}  {row.join_size:>6}")

# the engine only looks at similarities of mutually-best pairs
for pref in ("maxgroups", "minoutjoin"):
    out = run(corpus.R, corpus.S, EngineConfig(jaccard, pref))
    print()
    print(pref, "pivotal:", [str(t) for t in out.pivotal])
    print("  picked", out.theta_star, "score", out.best_score, "after", out.thresholds_evaluated, "thresholds")
    for a, b in join_at_star(out):
        print("  ", a, "~", b)
