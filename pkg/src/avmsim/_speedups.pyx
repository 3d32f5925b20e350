# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled engine core.

Runs the full simulation loop of every semantics over flat C arrays. The
RNG (xoshiro256** + splitmix-style rejection helpers) and the per-step
draw order replicate ``avmsim.rng`` / ``avmsim.engines`` exactly, so a run
here is draw-for-draw identical to the pure-Python fallback; the test
suite asserts that equivalence. Structures mirror the graph module:
swap-remove registries for agents by opinion and for discordant groups,
plus doubly-linked adjacency over the two endpoint slots of each group.
Opinion flips process incident groups in ascending group id, matching the
pure path's pinned update order.
"""

from libc.math cimport log

import numpy as np

ctypedef unsigned long long u64

# semantics codes (wrapper keeps these in sync)
#   0 dtmc, 1 weighted, 2 mass-action, 3 uniformized, 4 lcm
# stop-reason codes
#   0 no_discordant, 1 no_effective_rule, 2 step_limit, 3 time_limit
# rule codes: 0..3 basic, 4..7 extended, each in
#   (rewire-keep-one, rewire-keep-zero, adopt-to-one, adopt-to-zero) order


cdef class Sim:
    cdef unsigned char[::1] op
    cdef int[::1] gu
    cdef int[::1] gv
    cdef int[::1] ones
    cdef int[::1] zeros
    cdef int[::1] reg_pos
    cdef int[::1] disc
    cdef int[::1] disc_pos
    cdef int[::1] head
    cdef int[::1] nxt
    cdef int[::1] prv
    cdef int[::1] owner
    cdef int[::1] sort_buf
    cdef int n, m
    cdef int n_ones, n_zeros, n_disc
    cdef long long n11, n01, n00
    cdef u64 s0, s1, s2, s3

    # -- rng (mirrors avmsim.rng draw for draw) ----------------------

    cdef inline u64 _next64(self):
        cdef u64 s1 = self.s1
        cdef u64 x = s1 * 5ULL
        cdef u64 result = ((x << 7) | (x >> 57)) * 9ULL
        cdef u64 t = s1 << 17
        cdef u64 s2 = self.s2 ^ self.s0
        cdef u64 s3 = self.s3 ^ s1
        self.s1 = s1 ^ s2
        self.s0 = self.s0 ^ s3
        self.s2 = s2 ^ t
        self.s3 = (s3 << 45) | (s3 >> 19)
        return result

    cdef inline long long _randrange(self, u64 bound):
        cdef u64 threshold = (18446744073709551615ULL % bound + 1ULL) % bound
        cdef u64 limit = 18446744073709551615ULL - threshold
        cdef u64 r = self._next64()
        while r > limit:
            r = self._next64()
        return <long long>(r % bound)

    cdef inline double _random(self):
        return <double>(self._next64() >> 11) * 1.1102230246251565e-16

    cdef inline double _expovariate(self, double rate):
        cdef double u = self._random()
        while u == 0.0:
            u = self._random()
        return -log(1.0 - u) / rate

    cdef inline int _pick4(self, double w0, double w1, double w2, double w3,
                           double u):
        cdef double total = w0 + w1 + w2 + w3
        cdef double r = u * total
        cdef double cum = 0.0
        cdef int last = -1
        cdef double w
        cdef int j
        for j in range(4):
            if j == 0:
                w = w0
            elif j == 1:
                w = w1
            elif j == 2:
                w = w2
            else:
                w = w3
            if w > 0.0:
                last = j
                cum += w
                if r < cum:
                    return j
        return last

    # -- registries / discordant index -------------------------------

    cdef inline void _reg_add_one(self, int agent):
        self.reg_pos[agent] = self.n_ones
        self.ones[self.n_ones] = agent
        self.n_ones += 1

    cdef inline void _reg_add_zero(self, int agent):
        self.reg_pos[agent] = self.n_zeros
        self.zeros[self.n_zeros] = agent
        self.n_zeros += 1

    cdef inline void _reg_remove_one(self, int agent):
        cdef int p = self.reg_pos[agent]
        cdef int last = self.ones[self.n_ones - 1]
        self.n_ones -= 1
        if last != agent:
            self.ones[p] = last
            self.reg_pos[last] = p

    cdef inline void _reg_remove_zero(self, int agent):
        cdef int p = self.reg_pos[agent]
        cdef int last = self.zeros[self.n_zeros - 1]
        self.n_zeros -= 1
        if last != agent:
            self.zeros[p] = last
            self.reg_pos[last] = p

    cdef inline void _disc_add(self, int gid):
        if self.disc_pos[gid] >= 0:
            return
        self.disc_pos[gid] = self.n_disc
        self.disc[self.n_disc] = gid
        self.n_disc += 1

    cdef inline void _disc_remove(self, int gid):
        cdef int p = self.disc_pos[gid]
        cdef int last
        if p < 0:
            return
        self.disc_pos[gid] = -1
        last = self.disc[self.n_disc - 1]
        self.n_disc -= 1
        if last != gid:
            self.disc[p] = last
            self.disc_pos[last] = p

    # -- adjacency slots (slot = 2*gid + side) ------------------------

    cdef inline void _adj_insert(self, int slot, int agent):
        cdef int h = self.head[agent]
        self.owner[slot] = agent
        self.nxt[slot] = h
        self.prv[slot] = -1
        if h != -1:
            self.prv[h] = slot
        self.head[agent] = slot

    cdef inline void _adj_remove(self, int slot):
        cdef int p = self.prv[slot]
        cdef int nx = self.nxt[slot]
        if p == -1:
            self.head[self.owner[slot]] = nx
        else:
            self.nxt[p] = nx
        if nx != -1:
            self.prv[nx] = p

    # -- graph edits (mirror VoterGraph update order) ------------------

    cdef inline void _bump(self, int o1, int o2, int delta):
        if o1 != o2:
            self.n01 += delta
        elif o1 == 1:
            self.n11 += delta
        else:
            self.n00 += delta

    cdef void _set_opinion(self, int agent, int new_op):
        cdef int old = self.op[agent]
        cdef int cnt = 0
        cdef int s, k, j, gid, other, other_op
        if new_op == old:
            return
        self.op[agent] = <unsigned char>new_op
        if new_op == 1:
            self._reg_remove_zero(agent)
            self._reg_add_one(agent)
        else:
            self._reg_remove_one(agent)
            self._reg_add_zero(agent)
        s = self.head[agent]
        while s != -1:
            self.sort_buf[cnt] = s >> 1
            cnt += 1
            s = self.nxt[s]
        # ascending gid order (insertion sort; degrees are small)
        for k in range(1, cnt):
            gid = self.sort_buf[k]
            j = k - 1
            while j >= 0 and self.sort_buf[j] > gid:
                self.sort_buf[j + 1] = self.sort_buf[j]
                j -= 1
            self.sort_buf[j + 1] = gid
        for k in range(cnt):
            gid = self.sort_buf[k]
            other = self.gv[gid] if self.gu[gid] == agent else self.gu[gid]
            other_op = self.op[other]
            self._bump(old, other_op, -1)
            self._bump(new_op, other_op, 1)
            if new_op != other_op:
                self._disc_add(gid)
            else:
                self._disc_remove(gid)

    cdef void _rewire(self, int gid, int keep, int new_peer):
        cdef int u = self.gu[gid]
        cdef int v = self.gv[gid]
        cdef int other = v if keep == u else u
        cdef int op_keep = self.op[keep]
        cdef int op_new
        self._bump(op_keep, self.op[other], -1)
        self._disc_remove(gid)
        self._adj_remove(2 * gid)
        self._adj_remove(2 * gid + 1)
        self.gu[gid] = keep
        self.gv[gid] = new_peer
        self._adj_insert(2 * gid, keep)
        self._adj_insert(2 * gid + 1, new_peer)
        op_new = self.op[new_peer]
        self._bump(op_keep, op_new, 1)
        if op_keep != op_new:
            self._disc_add(gid)

    cdef inline int _draw_peer_one(self, int excluded):
        cdef int w = self.ones[self._randrange(self.n_ones)]
        while w == excluded:
            w = self.ones[self._randrange(self.n_ones)]
        return w

    cdef inline int _draw_peer_zero(self, int excluded):
        cdef int w = self.zeros[self._randrange(self.n_zeros)]
        while w == excluded:
            w = self.zeros[self._randrange(self.n_zeros)]
        return w


def simulate(int semantics,
             unsigned char[::1] op, int[::1] gu, int[::1] gv,
             int[::1] ones, int n_ones, int[::1] zeros, int n_zeros,
             int[::1] disc, int n_disc,
             long long n11, long long n01, long long n00,
             double alpha,
             double kappa_one, double kappa_zero,
             double adopt_one, double adopt_zero,
             double p0, double p1, double p2, double p3,
             u64 s0, u64 s1, u64 s2, u64 s3,
             long long max_steps, double max_time,
             bint count_noop_steps, long long sample_stride,
             bint record_events):
    """Run one full trajectory; mutates op/gu/gv/registries in place.

    Returns (steps, effective, t, reason, n_ones, n_zeros, n_disc,
    (n11, n01, n00), events, samples, rng_state). Events are tuples of
    (when, rule_code, group, actor, peer, new_peer, c1, c0, e11, e01, e00);
    samples are (when, c1, c0, e11, e01, e00).
    """
    cdef Sim S = Sim()
    cdef int n = op.shape[0]
    cdef int m = gu.shape[0]
    cdef int i, k, u_, v_, x, y, b, gid, actor, peer, new_peer, rule, j
    cdef int keeper, e1, e0, op_x, target
    cdef long long steps = 0, effective = 0, cnt_j, mm
    cdef double t = 0.0, dt, total, a0, a1, a2, a3, half_rw, half_ad
    cdef int reason = -1

    S.op = op; S.gu = gu; S.gv = gv
    S.ones = ones; S.zeros = zeros
    S.disc = disc
    S.n = n; S.m = m
    S.n_ones = n_ones; S.n_zeros = n_zeros; S.n_disc = n_disc
    S.n11 = n11; S.n01 = n01; S.n00 = n00
    S.s0 = s0; S.s1 = s1; S.s2 = s2; S.s3 = s3

    reg_pos = np.empty(n if n else 1, dtype=np.int32)
    disc_pos = np.full(m if m else 1, -1, dtype=np.int32)
    head = np.full(n if n else 1, -1, dtype=np.int32)
    nxt = np.empty(2 * m if m else 1, dtype=np.int32)
    prv = np.empty(2 * m if m else 1, dtype=np.int32)
    owner = np.empty(2 * m if m else 1, dtype=np.int32)
    sort_buf = np.empty(m if m else 1, dtype=np.int32)
    S.reg_pos = reg_pos; S.disc_pos = disc_pos
    S.head = head; S.nxt = nxt; S.prv = prv; S.owner = owner
    S.sort_buf = sort_buf

    for i in range(S.n_ones):
        S.reg_pos[S.ones[i]] = i
    for i in range(S.n_zeros):
        S.reg_pos[S.zeros[i]] = i
    for i in range(S.n_disc):
        S.disc_pos[S.disc[i]] = i
    for gid in range(m):
        S._adj_insert(2 * gid, S.gu[gid])
        S._adj_insert(2 * gid + 1, S.gv[gid])

    events = [] if record_events else None
    samples = []

    while True:
        # absorption check, mirroring engines._absorbed_reason
        if S.n01 == 0:
            reason = 0
            break
        if semantics == 0:
            if alpha >= 1.0 and S.n_ones < 2 and S.n_zeros < 2:
                reason = 1
                break
        elif semantics == 1:
            a0 = 0.5 * alpha * <double>S.n01 if S.n_ones >= 2 else 0.0
            a1 = 0.5 * alpha * <double>S.n01 if S.n_zeros >= 2 else 0.0
            a2 = 0.5 * (1.0 - alpha) * <double>S.n01
            a3 = a2
            if a0 + a1 + a2 + a3 <= 0.0:
                reason = 1
                break
        elif semantics == 2:
            a0 = kappa_one * <double>S.n01 * <double>(S.n_ones - 1)
            a1 = kappa_zero * <double>S.n01 * <double>(S.n_zeros - 1)
            a2 = adopt_one * <double>S.n01
            a3 = adopt_zero * <double>S.n01
            if a0 + a1 + a2 + a3 <= 0.0:
                reason = 1
                break
        elif semantics == 3:
            if not ((p0 > 0.0 and S.n01 * (S.n_ones - 1) > 0)
                    or (p1 > 0.0 and S.n01 * (S.n_zeros - 1) > 0)
                    or (p2 > 0.0 and S.n01 > 0)
                    or (p3 > 0.0 and S.n01 > 0)):
                reason = 1
                break
        else:
            mm = S.n01 * <long long>(S.n_ones - 1) * <long long>(S.n_zeros - 1)
            if mm <= 0:
                reason = 1
                break
        if steps >= max_steps:
            reason = 2
            break

        rule = -1
        actor = -1
        peer = -1
        new_peer = -1

        if semantics == 0:
            if count_noop_steps:
                gid = <int>S._randrange(m)
                u_ = S.gu[gid]; v_ = S.gv[gid]
                if S.op[u_] == S.op[v_]:
                    steps += 1
                    continue
            else:
                gid = S.disc[S._randrange(S.n_disc)]
                u_ = S.gu[gid]; v_ = S.gv[gid]
            b = <int>S._randrange(2)
            x = u_ if b == 0 else v_
            y = v_ if b == 0 else u_
            if S._random() < alpha:
                op_x = S.op[x]
                if op_x == 1:
                    if S.n_ones < 2:
                        steps += 1
                        continue
                    new_peer = S._draw_peer_one(x)
                    rule = 0
                else:
                    if S.n_zeros < 2:
                        steps += 1
                        continue
                    new_peer = S._draw_peer_zero(x)
                    rule = 1
                S._rewire(gid, x, new_peer)
                actor = x; peer = y
            else:
                target = S.op[y]
                S._set_opinion(x, target)
                rule = 2 if target == 1 else 3
                actor = x; peer = y
            steps += 1
        else:
            if semantics == 1 or semantics == 2:
                total = a0 + a1 + a2 + a3
            elif semantics == 3:
                total = 1.0
            else:
                total = <double>mm
            dt = S._expovariate(total)
            if t + dt > max_time:
                t = max_time
                reason = 3
                break
            t += dt
            steps += 1
            if semantics == 1 or semantics == 2:
                j = S._pick4(a0, a1, a2, a3, S._random())
            elif semantics == 3:
                j = S._pick4(p0, p1, p2, p3, S._random())
                if j == 0:
                    cnt_j = S.n01 * <long long>(S.n_ones - 1)
                elif j == 1:
                    cnt_j = S.n01 * <long long>(S.n_zeros - 1)
                else:
                    cnt_j = S.n01
                if cnt_j == 0:
                    continue  # drawn rule has no match: no-op jump
            else:
                half_rw = 0.5 * alpha
                half_ad = 0.5 * (1.0 - alpha)
                j = S._pick4(half_rw, half_rw, half_ad, half_ad, S._random())

            if semantics == 4:
                # common-LHS match: group, One-extra, Zero-extra (always both)
                gid = S.disc[S._randrange(S.n_disc)]
                u_ = S.gu[gid]; v_ = S.gv[gid]
                keeper = u_ if S.op[u_] == 1 else v_   # the One endpoint
                x = v_ if keeper == u_ else u_          # the Zero endpoint
                e1 = S._draw_peer_one(keeper)
                e0 = S._draw_peer_zero(x)
                if j == 0:
                    S._rewire(gid, keeper, e1)
                    rule = 4; actor = keeper; peer = x; new_peer = e1
                elif j == 1:
                    S._rewire(gid, x, e0)
                    rule = 5; actor = x; peer = keeper; new_peer = e0
                elif j == 2:
                    S._set_opinion(x, 1)
                    rule = 6; actor = x; peer = keeper
                else:
                    S._set_opinion(keeper, 0)
                    rule = 7; actor = keeper; peer = x
            else:
                gid = S.disc[S._randrange(S.n_disc)]
                u_ = S.gu[gid]; v_ = S.gv[gid]
                if j == 0:
                    keeper = u_ if S.op[u_] == 1 else v_
                    peer = v_ if keeper == u_ else u_
                    new_peer = S._draw_peer_one(keeper)
                    S._rewire(gid, keeper, new_peer)
                    rule = 0; actor = keeper
                elif j == 1:
                    keeper = u_ if S.op[u_] == 0 else v_
                    peer = v_ if keeper == u_ else u_
                    new_peer = S._draw_peer_zero(keeper)
                    S._rewire(gid, keeper, new_peer)
                    rule = 1; actor = keeper
                elif j == 2:
                    actor = u_ if S.op[u_] == 0 else v_
                    peer = v_ if actor == u_ else u_
                    S._set_opinion(actor, 1)
                    rule = 2
                else:
                    actor = u_ if S.op[u_] == 1 else v_
                    peer = v_ if actor == u_ else u_
                    S._set_opinion(actor, 0)
                    rule = 3

        effective += 1
        if record_events:
            events.append((
                steps if semantics == 0 else t,
                rule, gid, actor, peer,
                None if new_peer < 0 else new_peer,
                S.n_ones, S.n_zeros, S.n11, S.n01, S.n00))
        if sample_stride > 0 and effective % sample_stride == 0:
            samples.append((steps if semantics == 0 else t,
                            S.n_ones, S.n_zeros, S.n11, S.n01, S.n00))

    return (steps, effective, t, reason,
            S.n_ones, S.n_zeros, S.n_disc,
            (S.n11, S.n01, S.n00),
            events, samples,
            (S.s0, S.s1, S.s2, S.s3))
