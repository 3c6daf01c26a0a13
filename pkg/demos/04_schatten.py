"""Schatten norms of controlled Gram matrices against the frame bounds."""
from ucframes.controlled import schatten_report
from ucframes.generators import gen_random_system

print(f"{'d':>2} {'n':>2}  {'lower':>9} {'||G||_2^2':>9} {'upper':>9}  op<=HS<=tr")
for seed in range(6):
    d, n = 3 + seed % 3, 6 + seed
    r = schatten_report(gen_random_system(d, n, seed, "commuting_positive"))
    order = r.op <= r.hs <= r.trace
    print(f"{d:>2} {n:>2}  {r.lower_chain:9.3f} {r.hs**2:9.3f} {r.upper_chain:9.3f}  {order}")
