# Offline reference values frozen into tests/test_*.cpp. Run: python3 freeze.py
import mpmath as mp
mp.mp.dps = 40

def show(name, v):
    print(f"{name} = {mp.nstr(v, 22)}")

for lam in [mp.mpf('0.5'), 1 - mp.mpf('1e-3')]:
    show(f"K({lam})", mp.ellipk(lam**2))
    show(f"E({lam})", mp.ellipe(lam**2))

# ellipse generating curve a=1, b=0.5
show("ellipse L", mp.quad(lambda t: mp.sqrt(mp.sin(t)**2 + (mp.cos(t)/2)**2), [0, mp.pi/2, mp.pi, 3*mp.pi/2, 2*mp.pi]))

for s0 in [0, mp.mpf(1)]:
    f = lambda s: mp.log(abs(2*mp.sin((s - s0)/2))) * mp.exp(mp.cos(s))
    show(f"logint s0={s0}", mp.quad(f, sorted(set([0, s0, 2*mp.pi]))))
show("exp(sin) integral", mp.quad(lambda s: mp.exp(mp.sin(s)), [0, mp.pi, 2*mp.pi]))

for m in [0, 1, 2, 10, 50, 100]:
    show(f"Q_{m}-1/2(5)", mp.legenq(m - mp.mpf(1)/2, 0, 5, type=3).real)
