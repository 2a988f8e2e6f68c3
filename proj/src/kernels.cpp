// Copyright 2026 The Presage Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "presage/kernels.hpp"

#include "presage/io.hpp"
#include "presage/rng.hpp"

namespace presage {

namespace {

// Store to even slots: a[2*i-2] = (double)i for i in [1, n).
const char* kFoo1 = R"(func @foo1(%a: addr[f64 x 64], %n: i64) -> results(%a)
bb0:
  %one = const 1
  %g = icmp lt %one, %n
  condbr %g, bb1, bb2
bb1:
  %i = phi [%one, bb0], [%inc, bb1]
  %t = mul %i, 2
  %id = sub %t, 2
  %p = gep %a, %id, 8
  %fi = sitofp %i
  store %fi, %p
  %inc = add %i, 1
  %c = icmp lt %inc, %n
  condbr %c, bb1, bb2
bb2:
  ret
)";

// Hand-chained rewrite of foo1: each address is computed off the previous
// one with a relative index.
const char* kFoo2 = R"(func @foo2(%a: addr[f64 x 64], %n: i64) -> results(%a)
bb0:
  %zero = const 0
  %one = const 1
  %g = icmp lt %one, %n
  condbr %g, bb1, bb2
bb1:
  %i = phi [%one, bb0], [%inc, bb1]
  %addr = phi [%a, bb0], [%p, bb1]
  %pid = phi [%zero, bb0], [%id, bb1]
  %t = mul %i, 2
  %id = sub %t, 2
  %rid = sub %id, %pid
  %p = gep %addr, %rid, 8
  %fi = sitofp %i
  store %fi, %p
  %inc = add %i, 1
  %c = icmp lt %inc, %n
  condbr %c, bb1, bb2
bb2:
  ret
)";

// 5-point stencil, B <- 0.2*sum(A) then A <- 0.2*sum(B), tsteps rounds.
const char* kJacobi2d = R"(func @jacobi2d-mini(%A: addr[f64 x 256], %B: addr[f64 x 256], %n: i64, %tsteps: i64) -> results(%A, %B)
bb0:
  %zero = const 0
  %one = const 1
  %cf = const 0.2 : f64
  %nm1 = sub %n, 1
  %tg = icmp lt %zero, %tsteps
  condbr %tg, bb.t, bb.end
bb.t:
  %t = phi [%zero, bb0], [%t.inc, bb.t.latch]
  %ig1 = icmp lt %one, %nm1
  condbr %ig1, bb.i1, bb.mid
bb.i1:
  %i1 = phi [%one, bb.t], [%i1.inc, bb.i1.latch]
  %ro1 = mul %i1, %n
  %up1 = sub %ro1, %n
  %dn1 = add %ro1, %n
  %jg1 = icmp lt %one, %nm1
  condbr %jg1, bb.j1, bb.i1.latch
bb.j1:
  %j1 = phi [%one, bb.i1], [%j1.inc, bb.j1]
  %c1 = add %ro1, %j1
  %cl1 = sub %c1, 1
  %cr1 = add %c1, 1
  %cu1 = add %up1, %j1
  %cd1 = add %dn1, %j1
  %pc1 = gep %A, %c1, 8
  %vc1 = load %pc1 : f64
  %pl1 = gep %A, %cl1, 8
  %vl1 = load %pl1 : f64
  %s1a = fadd %vc1, %vl1
  %pr1 = gep %A, %cr1, 8
  %vr1 = load %pr1 : f64
  %s1b = fadd %s1a, %vr1
  %pd1 = gep %A, %cd1, 8
  %vd1 = load %pd1 : f64
  %s1c = fadd %s1b, %vd1
  %pu1 = gep %A, %cu1, 8
  %vu1 = load %pu1 : f64
  %s1d = fadd %s1c, %vu1
  %r1 = fmul %s1d, %cf
  %pb1 = gep %B, %c1, 8
  store %r1, %pb1
  %j1.inc = add %j1, 1
  %jc1 = icmp lt %j1.inc, %nm1
  condbr %jc1, bb.j1, bb.i1.latch
bb.i1.latch:
  %i1.inc = add %i1, 1
  %ic1 = icmp lt %i1.inc, %nm1
  condbr %ic1, bb.i1, bb.mid
bb.mid:
  %ig2 = icmp lt %one, %nm1
  condbr %ig2, bb.i2, bb.t.latch
bb.i2:
  %i2 = phi [%one, bb.mid], [%i2.inc, bb.i2.latch]
  %ro2 = mul %i2, %n
  %up2 = sub %ro2, %n
  %dn2 = add %ro2, %n
  %jg2 = icmp lt %one, %nm1
  condbr %jg2, bb.j2, bb.i2.latch
bb.j2:
  %j2 = phi [%one, bb.i2], [%j2.inc, bb.j2]
  %c2 = add %ro2, %j2
  %cl2 = sub %c2, 1
  %cr2 = add %c2, 1
  %cu2 = add %up2, %j2
  %cd2 = add %dn2, %j2
  %pc2 = gep %B, %c2, 8
  %vc2 = load %pc2 : f64
  %pl2 = gep %B, %cl2, 8
  %vl2 = load %pl2 : f64
  %s2a = fadd %vc2, %vl2
  %pr2 = gep %B, %cr2, 8
  %vr2 = load %pr2 : f64
  %s2b = fadd %s2a, %vr2
  %pd2 = gep %B, %cd2, 8
  %vd2 = load %pd2 : f64
  %s2c = fadd %s2b, %vd2
  %pu2 = gep %B, %cu2, 8
  %vu2 = load %pu2 : f64
  %s2d = fadd %s2c, %vu2
  %r2 = fmul %s2d, %cf
  %pa2 = gep %A, %c2, 8
  store %r2, %pa2
  %j2.inc = add %j2, 1
  %jc2 = icmp lt %j2.inc, %nm1
  condbr %jc2, bb.j2, bb.i2.latch
bb.i2.latch:
  %i2.inc = add %i2, 1
  %ic2 = icmp lt %i2.inc, %nm1
  condbr %ic2, bb.i2, bb.t.latch
bb.t.latch:
  %t.inc = add %t, 1
  %tc = icmp lt %t.inc, %tsteps
  condbr %tc, bb.t, bb.end
bb.end:
  ret
)";

// In-place 9-point Gauss-Seidel sweep.
const char* kSeidel2d = R"(func @seidel2d-mini(%A: addr[f64 x 256], %n: i64, %tsteps: i64) -> results(%A)
bb0:
  %zero = const 0
  %one = const 1
  %nine = const 9.0 : f64
  %nm1 = sub %n, 1
  %tg = icmp lt %zero, %tsteps
  condbr %tg, bb.t, bb.end
bb.t:
  %t = phi [%zero, bb0], [%t.inc, bb.t.latch]
  %ig = icmp lt %one, %nm1
  condbr %ig, bb.i, bb.t.latch
bb.i:
  %i = phi [%one, bb.t], [%i.inc, bb.i.latch]
  %ro = mul %i, %n
  %up = sub %ro, %n
  %dn = add %ro, %n
  %jg = icmp lt %one, %nm1
  condbr %jg, bb.j, bb.i.latch
bb.j:
  %j = phi [%one, bb.i], [%j.inc, bb.j]
  %c = add %ro, %j
  %uc = add %up, %j
  %ul = sub %uc, 1
  %ur = add %uc, 1
  %cl = sub %c, 1
  %cr = add %c, 1
  %dc = add %dn, %j
  %dl = sub %dc, 1
  %dr = add %dc, 1
  %pul = gep %A, %ul, 8
  %vul = load %pul : f64
  %puc = gep %A, %uc, 8
  %vuc = load %puc : f64
  %sa = fadd %vul, %vuc
  %pur = gep %A, %ur, 8
  %vur = load %pur : f64
  %sb = fadd %sa, %vur
  %pcl = gep %A, %cl, 8
  %vcl = load %pcl : f64
  %sc = fadd %sb, %vcl
  %pc = gep %A, %c, 8
  %vc = load %pc : f64
  %sd = fadd %sc, %vc
  %pcr = gep %A, %cr, 8
  %vcr = load %pcr : f64
  %se = fadd %sd, %vcr
  %pdl = gep %A, %dl, 8
  %vdl = load %pdl : f64
  %sf = fadd %se, %vdl
  %pdc = gep %A, %dc, 8
  %vdc = load %pdc : f64
  %sg = fadd %sf, %vdc
  %pdr = gep %A, %dr, 8
  %vdr = load %pdr : f64
  %sh = fadd %sg, %vdr
  %r = fdiv %sh, %nine
  store %r, %pc
  %j.inc = add %j, 1
  %jc = icmp lt %j.inc, %nm1
  condbr %jc, bb.j, bb.i.latch
bb.i.latch:
  %i.inc = add %i, 1
  %ic = icmp lt %i.inc, %nm1
  condbr %ic, bb.i, bb.t.latch
bb.t.latch:
  %t.inc = add %t, 1
  %tc = icmp lt %t.inc, %tsteps
  condbr %tc, bb.t, bb.end
bb.end:
  ret
)";

// Alternating-direction sweeps: row-forward then column-forward elimination.
const char* kAdi = R"(func @adi-mini(%A: addr[f64 x 256], %n: i64, %tsteps: i64) -> results(%A)
bb0:
  %zero = const 0
  %one = const 1
  %half = const 0.5 : f64
  %tg = icmp lt %zero, %tsteps
  condbr %tg, bb.t, bb.end
bb.t:
  %t = phi [%zero, bb0], [%t.inc, bb.t.latch]
  %ig1 = icmp lt %zero, %n
  condbr %ig1, bb.i1, bb.mid
bb.i1:
  %i1 = phi [%zero, bb.t], [%i1.inc, bb.i1.latch]
  %ro1 = mul %i1, %n
  %jg1 = icmp lt %one, %n
  condbr %jg1, bb.j1, bb.i1.latch
bb.j1:
  %j1 = phi [%one, bb.i1], [%j1.inc, bb.j1]
  %c1 = add %ro1, %j1
  %w1 = sub %c1, 1
  %pw1 = gep %A, %w1, 8
  %vw1 = load %pw1 : f64
  %h1 = fmul %vw1, %half
  %pc1 = gep %A, %c1, 8
  %vc1 = load %pc1 : f64
  %r1 = fsub %vc1, %h1
  store %r1, %pc1
  %j1.inc = add %j1, 1
  %jc1 = icmp lt %j1.inc, %n
  condbr %jc1, bb.j1, bb.i1.latch
bb.i1.latch:
  %i1.inc = add %i1, 1
  %ic1 = icmp lt %i1.inc, %n
  condbr %ic1, bb.i1, bb.mid
bb.mid:
  %jg2 = icmp lt %zero, %n
  condbr %jg2, bb.j2, bb.t.latch
bb.j2:
  %j2 = phi [%zero, bb.mid], [%j2.inc, bb.j2.latch]
  %ig2 = icmp lt %one, %n
  condbr %ig2, bb.i2, bb.j2.latch
bb.i2:
  %i2 = phi [%one, bb.j2], [%i2.inc, bb.i2]
  %ro2 = mul %i2, %n
  %c2 = add %ro2, %j2
  %u2 = sub %c2, %n
  %pu2 = gep %A, %u2, 8
  %vu2 = load %pu2 : f64
  %h2 = fmul %vu2, %half
  %pc2 = gep %A, %c2, 8
  %vc2 = load %pc2 : f64
  %r2 = fsub %vc2, %h2
  store %r2, %pc2
  %i2.inc = add %i2, 1
  %ic2 = icmp lt %i2.inc, %n
  condbr %ic2, bb.i2, bb.j2.latch
bb.j2.latch:
  %j2.inc = add %j2, 1
  %jc2 = icmp lt %j2.inc, %n
  condbr %jc2, bb.j2, bb.t.latch
bb.t.latch:
  %t.inc = add %t, 1
  %tc = icmp lt %t.inc, %tsteps
  condbr %tc, bb.t, bb.end
bb.end:
  ret
)";

// 2-D FDTD-style field updates. The hz sweep addresses its row through a
// derived base (a gep off another gep), so those accesses stay unchained.
const char* kFdtd = R"(func @fdtd-mini(%ex: addr[f64 x 256], %ey: addr[f64 x 256], %hz: addr[f64 x 256], %n: i64, %tsteps: i64) -> results(%ex, %ey, %hz)
bb0:
  %zero = const 0
  %one = const 1
  %half = const 0.5 : f64
  %csev = const 0.7 : f64
  %nm1 = sub %n, 1
  %tg = icmp lt %zero, %tsteps
  condbr %tg, bb.t, bb.end
bb.t:
  %t = phi [%zero, bb0], [%t.inc, bb.t.latch]
  %ig1 = icmp lt %one, %n
  condbr %ig1, bb.i1, bb.mid1
bb.i1:
  %i1 = phi [%one, bb.t], [%i1.inc, bb.i1.latch]
  %ro1 = mul %i1, %n
  %jg1 = icmp lt %zero, %n
  condbr %jg1, bb.j1, bb.i1.latch
bb.j1:
  %j1 = phi [%zero, bb.i1], [%j1.inc, bb.j1]
  %c1 = add %ro1, %j1
  %u1 = sub %c1, %n
  %phzc1 = gep %hz, %c1, 8
  %vhzc1 = load %phzc1 : f64
  %phzu1 = gep %hz, %u1, 8
  %vhzu1 = load %phzu1 : f64
  %d1 = fsub %vhzc1, %vhzu1
  %m1 = fmul %half, %d1
  %pey1 = gep %ey, %c1, 8
  %vey1 = load %pey1 : f64
  %r1 = fsub %vey1, %m1
  store %r1, %pey1
  %j1.inc = add %j1, 1
  %jc1 = icmp lt %j1.inc, %n
  condbr %jc1, bb.j1, bb.i1.latch
bb.i1.latch:
  %i1.inc = add %i1, 1
  %ic1 = icmp lt %i1.inc, %n
  condbr %ic1, bb.i1, bb.mid1
bb.mid1:
  %ig2 = icmp lt %zero, %n
  condbr %ig2, bb.i2, bb.mid2
bb.i2:
  %i2 = phi [%zero, bb.mid1], [%i2.inc, bb.i2.latch]
  %ro2 = mul %i2, %n
  %jg2 = icmp lt %one, %n
  condbr %jg2, bb.j2, bb.i2.latch
bb.j2:
  %j2 = phi [%one, bb.i2], [%j2.inc, bb.j2]
  %c2 = add %ro2, %j2
  %w2 = sub %c2, 1
  %phzc2 = gep %hz, %c2, 8
  %vhzc2 = load %phzc2 : f64
  %phzw2 = gep %hz, %w2, 8
  %vhzw2 = load %phzw2 : f64
  %d2 = fsub %vhzc2, %vhzw2
  %m2 = fmul %half, %d2
  %pex2 = gep %ex, %c2, 8
  %vex2 = load %pex2 : f64
  %r2 = fsub %vex2, %m2
  store %r2, %pex2
  %j2.inc = add %j2, 1
  %jc2 = icmp lt %j2.inc, %n
  condbr %jc2, bb.j2, bb.i2.latch
bb.i2.latch:
  %i2.inc = add %i2, 1
  %ic2 = icmp lt %i2.inc, %n
  condbr %ic2, bb.i2, bb.mid2
bb.mid2:
  %ig3 = icmp lt %zero, %nm1
  condbr %ig3, bb.i3, bb.t.latch
bb.i3:
  %i3 = phi [%zero, bb.mid2], [%i3.inc, bb.i3.latch]
  %ro3 = mul %i3, %n
  %row3 = gep %hz, %ro3, 8
  %jg3 = icmp lt %zero, %nm1
  condbr %jg3, bb.j3, bb.i3.latch
bb.j3:
  %j3 = phi [%zero, bb.i3], [%j3.inc, bb.j3]
  %c3 = add %ro3, %j3
  %e3 = add %c3, 1
  %s3 = add %c3, %n
  %pexe3 = gep %ex, %e3, 8
  %vexe3 = load %pexe3 : f64
  %pexc3 = gep %ex, %c3, 8
  %vexc3 = load %pexc3 : f64
  %d3a = fsub %vexe3, %vexc3
  %peyd3 = gep %ey, %s3, 8
  %veyd3 = load %peyd3 : f64
  %d3b = fadd %d3a, %veyd3
  %peyc3 = gep %ey, %c3, 8
  %veyc3 = load %peyc3 : f64
  %d3c = fsub %d3b, %veyc3
  %m3 = fmul %csev, %d3c
  %phz3 = gep %row3, %j3, 8
  %vhz3 = load %phz3 : f64
  %r3 = fsub %vhz3, %m3
  store %r3, %phz3
  %j3.inc = add %j3, 1
  %jc3 = icmp lt %j3.inc, %nm1
  condbr %jc3, bb.j3, bb.i3.latch
bb.i3.latch:
  %i3.inc = add %i3, 1
  %ic3 = icmp lt %i3.inc, %nm1
  condbr %ic3, bb.i3, bb.t.latch
bb.t.latch:
  %t.inc = add %t, 1
  %tc = icmp lt %t.inc, %tsteps
  condbr %tc, bb.t, bb.end
bb.end:
  ret
)";

// y = alpha*(A.x) + beta*(B.x), accumulators carried in registers.
const char* kGesummv = R"(func @gesummv-mini(%A: addr[f64 x 256], %B: addr[f64 x 256], %x: addr[f64 x 16], %y: addr[f64 x 16], %n: i64) -> results(%y)
bb0:
  %zero = const 0
  %fzero = const 0.0 : f64
  %alpha = const 1.5 : f64
  %beta = const 1.2 : f64
  %ig = icmp lt %zero, %n
  condbr %ig, bb.i, bb.end
bb.i:
  %i = phi [%zero, bb0], [%i.inc, bb.i.tail]
  %ro = mul %i, %n
  %jg = icmp lt %zero, %n
  condbr %jg, bb.j, bb.i.tail
bb.j:
  %j = phi [%zero, bb.i], [%j.inc, bb.j]
  %acc1 = phi [%fzero, bb.i], [%acc1.n, bb.j]
  %acc2 = phi [%fzero, bb.i], [%acc2.n, bb.j]
  %c = add %ro, %j
  %pa = gep %A, %c, 8
  %va = load %pa : f64
  %px = gep %x, %j, 8
  %vx = load %px : f64
  %t1 = fmul %va, %vx
  %acc1.n = fadd %t1, %acc1
  %pb = gep %B, %c, 8
  %vb = load %pb : f64
  %t2 = fmul %vb, %vx
  %acc2.n = fadd %t2, %acc2
  %j.inc = add %j, 1
  %jc = icmp lt %j.inc, %n
  condbr %jc, bb.j, bb.i.tail
bb.i.tail:
  %tmp = phi [%fzero, bb.i], [%acc1.n, bb.j]
  %yv = phi [%fzero, bb.i], [%acc2.n, bb.j]
  %s1 = fmul %alpha, %tmp
  %s2 = fmul %beta, %yv
  %sum = fadd %s1, %s2
  %py = gep %y, %i, 8
  store %sum, %py
  %i.inc = add %i, 1
  %ic = icmp lt %i.inc, %n
  condbr %ic, bb.i, bb.end
bb.end:
  ret
)";

// y = At(A x) via an explicit tmp array.
const char* kAtax = R"(func @atax-mini(%A: addr[f64 x 256], %x: addr[f64 x 16], %y: addr[f64 x 16], %tmp: addr[f64 x 16], %n: i64) -> results(%y)
bb0:
  %zero = const 0
  %fzero = const 0.0 : f64
  %jg0 = icmp lt %zero, %n
  condbr %jg0, bb.z, bb.mid
bb.z:
  %jz = phi [%zero, bb0], [%jz.inc, bb.z]
  %pyz = gep %y, %jz, 8
  store %fzero, %pyz
  %jz.inc = add %jz, 1
  %jzc = icmp lt %jz.inc, %n
  condbr %jzc, bb.z, bb.mid
bb.mid:
  %ig1 = icmp lt %zero, %n
  condbr %ig1, bb.i1, bb.mid2
bb.i1:
  %i1 = phi [%zero, bb.mid], [%i1.inc, bb.i1.tail]
  %ro1 = mul %i1, %n
  %jg1 = icmp lt %zero, %n
  condbr %jg1, bb.j1, bb.i1.tail
bb.j1:
  %j1 = phi [%zero, bb.i1], [%j1.inc, bb.j1]
  %acc = phi [%fzero, bb.i1], [%acc.n, bb.j1]
  %c1 = add %ro1, %j1
  %pa1 = gep %A, %c1, 8
  %va1 = load %pa1 : f64
  %px1 = gep %x, %j1, 8
  %vx1 = load %px1 : f64
  %t1 = fmul %va1, %vx1
  %acc.n = fadd %acc, %t1
  %j1.inc = add %j1, 1
  %jc1 = icmp lt %j1.inc, %n
  condbr %jc1, bb.j1, bb.i1.tail
bb.i1.tail:
  %tv = phi [%fzero, bb.i1], [%acc.n, bb.j1]
  %pt1 = gep %tmp, %i1, 8
  store %tv, %pt1
  %i1.inc = add %i1, 1
  %ic1 = icmp lt %i1.inc, %n
  condbr %ic1, bb.i1, bb.mid2
bb.mid2:
  %ig2 = icmp lt %zero, %n
  condbr %ig2, bb.i2, bb.end
bb.i2:
  %i2 = phi [%zero, bb.mid2], [%i2.inc, bb.i2.latch]
  %ro2 = mul %i2, %n
  %pt2 = gep %tmp, %i2, 8
  %tv2 = load %pt2 : f64
  %jg2 = icmp lt %zero, %n
  condbr %jg2, bb.j2, bb.i2.latch
bb.j2:
  %j2 = phi [%zero, bb.i2], [%j2.inc, bb.j2]
  %c2 = add %ro2, %j2
  %pa2 = gep %A, %c2, 8
  %va2 = load %pa2 : f64
  %t2 = fmul %va2, %tv2
  %py2 = gep %y, %j2, 8
  %vy2 = load %py2 : f64
  %r2 = fadd %vy2, %t2
  store %r2, %py2
  %j2.inc = add %j2, 1
  %jc2 = icmp lt %j2.inc, %n
  condbr %jc2, bb.j2, bb.i2.latch
bb.i2.latch:
  %i2.inc = add %i2, 1
  %ic2 = icmp lt %i2.inc, %n
  condbr %ic2, bb.i2, bb.end
bb.end:
  ret
)";

// s = At r, q = A p in one sweep; five live array bases.
const char* kBicg = R"(func @bicg-mini(%A: addr[f64 x 256], %s: addr[f64 x 16], %q: addr[f64 x 16], %p: addr[f64 x 16], %r: addr[f64 x 16], %n: i64) -> results(%s, %q)
bb0:
  %zero = const 0
  %fzero = const 0.0 : f64
  %jg0 = icmp lt %zero, %n
  condbr %jg0, bb.z, bb.mid
bb.z:
  %jz = phi [%zero, bb0], [%jz.inc, bb.z]
  %psz = gep %s, %jz, 8
  store %fzero, %psz
  %jz.inc = add %jz, 1
  %jzc = icmp lt %jz.inc, %n
  condbr %jzc, bb.z, bb.mid
bb.mid:
  %ig = icmp lt %zero, %n
  condbr %ig, bb.i, bb.end
bb.i:
  %i = phi [%zero, bb.mid], [%i.inc, bb.i.tail]
  %ro = mul %i, %n
  %pr = gep %r, %i, 8
  %vr = load %pr : f64
  %jg = icmp lt %zero, %n
  condbr %jg, bb.j, bb.i.tail
bb.j:
  %j = phi [%zero, bb.i], [%j.inc, bb.j]
  %qa = phi [%fzero, bb.i], [%qa.n, bb.j]
  %c = add %ro, %j
  %pa = gep %A, %c, 8
  %va = load %pa : f64
  %ps = gep %s, %j, 8
  %vs = load %ps : f64
  %t1 = fmul %vr, %va
  %s.n = fadd %vs, %t1
  store %s.n, %ps
  %pp = gep %p, %j, 8
  %vp = load %pp : f64
  %t2 = fmul %va, %vp
  %qa.n = fadd %qa, %t2
  %j.inc = add %j, 1
  %jc = icmp lt %j.inc, %n
  condbr %jc, bb.j, bb.i.tail
bb.i.tail:
  %qv = phi [%fzero, bb.i], [%qa.n, bb.j]
  %pq = gep %q, %i, 8
  store %qv, %pq
  %i.inc = add %i, 1
  %ic = icmp lt %i.inc, %n
  condbr %ic, bb.i, bb.end
bb.end:
  ret
)";

// Triangular update: B[i][j] = alpha*(B[i][j] + sum_{k>i} A[k][i]*B[k][j]).
const char* kTrmm = R"(func @trmm-mini(%A: addr[f64 x 144], %B: addr[f64 x 144], %n: i64) -> results(%B)
bb0:
  %zero = const 0
  %alpha = const 1.5 : f64
  %ig = icmp lt %zero, %n
  condbr %ig, bb.i, bb.end
bb.i:
  %i = phi [%zero, bb0], [%i.inc, bb.i.latch]
  %ro = mul %i, %n
  %jg = icmp lt %zero, %n
  condbr %jg, bb.j, bb.i.latch
bb.j:
  %j = phi [%zero, bb.i], [%j.inc, bb.j.tail]
  %c = add %ro, %j
  %pb = gep %B, %c, 8
  %vb = load %pb : f64
  %k0 = add %i, 1
  %kg = icmp lt %k0, %n
  condbr %kg, bb.k, bb.j.tail
bb.k:
  %k = phi [%k0, bb.j], [%k.inc, bb.k]
  %acc = phi [%vb, bb.j], [%acc.n, bb.k]
  %rk = mul %k, %n
  %cki = add %rk, %i
  %pa = gep %A, %cki, 8
  %va = load %pa : f64
  %ckj = add %rk, %j
  %pbk = gep %B, %ckj, 8
  %vbk = load %pbk : f64
  %t = fmul %va, %vbk
  %acc.n = fadd %acc, %t
  %k.inc = add %k, 1
  %kc = icmp lt %k.inc, %n
  condbr %kc, bb.k, bb.j.tail
bb.j.tail:
  %sum = phi [%vb, bb.j], [%acc.n, bb.k]
  %rs = fmul %alpha, %sum
  store %rs, %pb
  %j.inc = add %j, 1
  %jc = icmp lt %j.inc, %n
  condbr %jc, bb.j, bb.i.latch
bb.i.latch:
  %i.inc = add %i, 1
  %ic = icmp lt %i.inc, %n
  condbr %ic, bb.i, bb.end
bb.end:
  ret
)";

// In-place Doolittle elimination without pivoting.
const char* kLu = R"(func @lu-mini(%A: addr[f64 x 144], %n: i64) -> results(%A)
bb0:
  %zero = const 0
  %ig = icmp lt %zero, %n
  condbr %ig, bb.i, bb.end
bb.i:
  %i = phi [%zero, bb0], [%i.inc, bb.i.latch]
  %ro = mul %i, %n
  %jg1 = icmp lt %zero, %i
  condbr %jg1, bb.j1, bb.mid
bb.j1:
  %j1 = phi [%zero, bb.i], [%j1.inc, bb.j1.tail]
  %c1 = add %ro, %j1
  %pc1 = gep %A, %c1, 8
  %vc1 = load %pc1 : f64
  %kg1 = icmp lt %zero, %j1
  condbr %kg1, bb.k1, bb.j1.tail
bb.k1:
  %k1 = phi [%zero, bb.j1], [%k1.inc, bb.k1]
  %acc1 = phi [%vc1, bb.j1], [%acc1.n, bb.k1]
  %cik1 = add %ro, %k1
  %pik1 = gep %A, %cik1, 8
  %vik1 = load %pik1 : f64
  %rk1 = mul %k1, %n
  %ckj1 = add %rk1, %j1
  %pkj1 = gep %A, %ckj1, 8
  %vkj1 = load %pkj1 : f64
  %t1 = fmul %vik1, %vkj1
  %acc1.n = fsub %acc1, %t1
  %k1.inc = add %k1, 1
  %kc1 = icmp lt %k1.inc, %j1
  condbr %kc1, bb.k1, bb.j1.tail
bb.j1.tail:
  %num = phi [%vc1, bb.j1], [%acc1.n, bb.k1]
  %rj = mul %j1, %n
  %cjj = add %rj, %j1
  %pjj = gep %A, %cjj, 8
  %vjj = load %pjj : f64
  %q = fdiv %num, %vjj
  store %q, %pc1
  %j1.inc = add %j1, 1
  %jc1 = icmp lt %j1.inc, %i
  condbr %jc1, bb.j1, bb.mid
bb.mid:
  %jg2 = icmp lt %i, %n
  condbr %jg2, bb.j2, bb.i.latch
bb.j2:
  %j2 = phi [%i, bb.mid], [%j2.inc, bb.j2.tail]
  %c2 = add %ro, %j2
  %pc2 = gep %A, %c2, 8
  %vc2 = load %pc2 : f64
  %kg2 = icmp lt %zero, %i
  condbr %kg2, bb.k2, bb.j2.tail
bb.k2:
  %k2 = phi [%zero, bb.j2], [%k2.inc, bb.k2]
  %acc2 = phi [%vc2, bb.j2], [%acc2.n, bb.k2]
  %cik2 = add %ro, %k2
  %pik2 = gep %A, %cik2, 8
  %vik2 = load %pik2 : f64
  %rk2 = mul %k2, %n
  %ckj2 = add %rk2, %j2
  %pkj2 = gep %A, %ckj2, 8
  %vkj2 = load %pkj2 : f64
  %t2 = fmul %vik2, %vkj2
  %acc2.n = fsub %acc2, %t2
  %k2.inc = add %k2, 1
  %kc2 = icmp lt %k2.inc, %i
  condbr %kc2, bb.k2, bb.j2.tail
bb.j2.tail:
  %sum2 = phi [%vc2, bb.j2], [%acc2.n, bb.k2]
  store %sum2, %pc2
  %j2.inc = add %j2, 1
  %jc2 = icmp lt %j2.inc, %n
  condbr %jc2, bb.j2, bb.i.latch
bb.i.latch:
  %i.inc = add %i, 1
  %ic = icmp lt %i.inc, %n
  condbr %ic, bb.i, bb.end
bb.end:
  ret
)";

// Square-root-free factorization with the triangular access pattern.
const char* kCholesky = R"(func @cholesky-mini(%A: addr[f64 x 144], %n: i64) -> results(%A)
bb0:
  %zero = const 0
  %ig = icmp lt %zero, %n
  condbr %ig, bb.i, bb.end
bb.i:
  %i = phi [%zero, bb0], [%i.inc, bb.diag.tail]
  %ro = mul %i, %n
  %jg1 = icmp lt %zero, %i
  condbr %jg1, bb.j1, bb.diag
bb.j1:
  %j1 = phi [%zero, bb.i], [%j1.inc, bb.j1.tail]
  %rj1 = mul %j1, %n
  %c1 = add %ro, %j1
  %pc1 = gep %A, %c1, 8
  %vc1 = load %pc1 : f64
  %kg1 = icmp lt %zero, %j1
  condbr %kg1, bb.k1, bb.j1.tail
bb.k1:
  %k1 = phi [%zero, bb.j1], [%k1.inc, bb.k1]
  %acc1 = phi [%vc1, bb.j1], [%acc1.n, bb.k1]
  %cik = add %ro, %k1
  %pik = gep %A, %cik, 8
  %vik = load %pik : f64
  %cjk = add %rj1, %k1
  %pjk = gep %A, %cjk, 8
  %vjk = load %pjk : f64
  %t1 = fmul %vik, %vjk
  %acc1.n = fsub %acc1, %t1
  %k1.inc = add %k1, 1
  %kc1 = icmp lt %k1.inc, %j1
  condbr %kc1, bb.k1, bb.j1.tail
bb.j1.tail:
  %num = phi [%vc1, bb.j1], [%acc1.n, bb.k1]
  %cjj = add %rj1, %j1
  %pjj = gep %A, %cjj, 8
  %vjj = load %pjj : f64
  %q = fdiv %num, %vjj
  store %q, %pc1
  %j1.inc = add %j1, 1
  %jc1 = icmp lt %j1.inc, %i
  condbr %jc1, bb.j1, bb.diag
bb.diag:
  %cii = add %ro, %i
  %pii = gep %A, %cii, 8
  %vii = load %pii : f64
  %kg2 = icmp lt %zero, %i
  condbr %kg2, bb.k2, bb.diag.tail
bb.k2:
  %k2 = phi [%zero, bb.diag], [%k2.inc, bb.k2]
  %acc2 = phi [%vii, bb.diag], [%acc2.n, bb.k2]
  %cik2 = add %ro, %k2
  %pik2 = gep %A, %cik2, 8
  %vik2 = load %pik2 : f64
  %t2 = fmul %vik2, %vik2
  %acc2.n = fsub %acc2, %t2
  %k2.inc = add %k2, 1
  %kc2 = icmp lt %k2.inc, %i
  condbr %kc2, bb.k2, bb.diag.tail
bb.diag.tail:
  %dsum = phi [%vii, bb.diag], [%acc2.n, bb.k2]
  store %dsum, %pii
  %i.inc = add %i, 1
  %ic = icmp lt %i.inc, %n
  condbr %ic, bb.i, bb.end
bb.end:
  ret
)";

std::vector<ArraySpec> len_foo(const std::map<std::string, int64_t>& s) {
  uint64_t n = static_cast<uint64_t>(s.at("n"));
  return {{"a", ValueType::Float64, 8, 2 * n}};
}

std::vector<ArraySpec> len_grid2(const std::map<std::string, int64_t>& s) {
  uint64_t n = static_cast<uint64_t>(s.at("n"));
  return {{"A", ValueType::Float64, 8, n * n}, {"B", ValueType::Float64, 8, n * n}};
}

std::vector<ArraySpec> len_grid1(const std::map<std::string, int64_t>& s) {
  uint64_t n = static_cast<uint64_t>(s.at("n"));
  return {{"A", ValueType::Float64, 8, n * n}};
}

std::vector<ArraySpec> len_fdtd(const std::map<std::string, int64_t>& s) {
  uint64_t n = static_cast<uint64_t>(s.at("n"));
  return {{"ex", ValueType::Float64, 8, n * n},
          {"ey", ValueType::Float64, 8, n * n},
          {"hz", ValueType::Float64, 8, n * n}};
}

std::vector<ArraySpec> len_gesummv(const std::map<std::string, int64_t>& s) {
  uint64_t n = static_cast<uint64_t>(s.at("n"));
  return {{"A", ValueType::Float64, 8, n * n},
          {"B", ValueType::Float64, 8, n * n},
          {"x", ValueType::Float64, 8, n},
          {"y", ValueType::Float64, 8, n}};
}

std::vector<ArraySpec> len_atax(const std::map<std::string, int64_t>& s) {
  uint64_t n = static_cast<uint64_t>(s.at("n"));
  return {{"A", ValueType::Float64, 8, n * n},
          {"x", ValueType::Float64, 8, n},
          {"y", ValueType::Float64, 8, n},
          {"tmp", ValueType::Float64, 8, n}};
}

std::vector<ArraySpec> len_bicg(const std::map<std::string, int64_t>& s) {
  uint64_t n = static_cast<uint64_t>(s.at("n"));
  return {{"A", ValueType::Float64, 8, n * n},
          {"s", ValueType::Float64, 8, n},
          {"q", ValueType::Float64, 8, n},
          {"p", ValueType::Float64, 8, n},
          {"r", ValueType::Float64, 8, n}};
}

std::vector<KernelSpec> make_corpus() {
  std::vector<KernelSpec> ks;
  ks.push_back({"foo1", "motivating", "even-slot store loop, fixed-base addressing", kFoo1,
                {{"n", 8, 64}}, false, len_foo});
  ks.push_back({"foo2", "motivating", "even-slot store loop, hand-chained addressing", kFoo2,
                {{"n", 8, 64}}, true, len_foo});
  ks.push_back({"jacobi2d-mini", "stencil", "5-point Jacobi sweep over two grids", kJacobi2d,
                {{"n", 8, 16}, {"tsteps", 1, 2}}, false, len_grid2});
  ks.push_back({"seidel2d-mini", "stencil", "9-point in-place Gauss-Seidel sweep", kSeidel2d,
                {{"n", 8, 16}, {"tsteps", 1, 2}}, false, len_grid1});
  ks.push_back({"adi-mini", "stencil", "alternating-direction in-place sweeps", kAdi,
                {{"n", 8, 16}, {"tsteps", 1, 2}}, false, len_grid1});
  ks.push_back({"fdtd-mini", "stencil", "2-D FDTD field updates; hz rows via derived bases",
                kFdtd, {{"n", 8, 16}, {"tsteps", 1, 2}}, true, len_fdtd});
  ks.push_back({"gesummv-mini", "blas", "scaled sum of two matrix-vector products", kGesummv,
                {{"n", 8, 24}}, false, len_gesummv});
  ks.push_back({"atax-mini", "blas", "A-transpose-times-A-times-x", kAtax, {{"n", 8, 24}},
                false, len_atax});
  ks.push_back({"bicg-mini", "blas", "BiCG sub-kernel, five array bases", kBicg, {{"n", 8, 24}},
                false, len_bicg});
  ks.push_back({"trmm-mini", "blas", "triangular matrix multiply update", kTrmm, {{"n", 8, 12}},
                false, len_grid2});
  ks.push_back({"lu-mini", "solver", "in-place Doolittle LU without pivoting", kLu,
                {{"n", 8, 12}}, false, len_grid1});
  ks.push_back({"cholesky-mini", "solver", "square-root-free Cholesky-pattern factorization",
                kCholesky, {{"n", 8, 12}}, false, len_grid1});
  return ks;
}

}  // namespace

const std::vector<KernelSpec>& kernel_corpus() {
  static const std::vector<KernelSpec> corpus = make_corpus();
  return corpus;
}

const KernelSpec* find_kernel(std::string_view name) {
  for (const auto& k : kernel_corpus())
    if (k.name == name) return &k;
  return nullptr;
}

Function build_kernel(std::string_view name) {
  const KernelSpec* spec = find_kernel(name);
  if (!spec) throw InterpError("unknown kernel '" + std::string(name) + "'");
  return parse_ir(spec->source);
}

KernelInputs gen_inputs(const KernelSpec& spec, uint64_t seed) {
  // Fold the kernel name in so corpora draws decorrelate across kernels.
  uint64_t h = 1469598103934665603ull;
  for (char c : spec.name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  SplitMix64 rng(seed ^ h);

  KernelInputs in;
  for (const auto& r : spec.scalars)
    in.args[r.name] = static_cast<int64_t>(
        rng.range(static_cast<uint64_t>(r.lo), static_cast<uint64_t>(r.hi)));

  std::vector<ArraySpec> arrays = spec.lengths ? spec.lengths(in.args) : std::vector<ArraySpec>{};
  in.mem = MemoryImage::build(arrays);
  for (auto& region : in.mem.regions) {
    uint64_t count = region.size / region.elem_size;
    for (uint64_t i = 0; i < count; ++i) region.write_f64(i, rng.next_pm1());
  }
  return in;
}

}  // namespace presage
