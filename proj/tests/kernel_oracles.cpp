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

#include "kernel_oracles.hpp"

#include <cstring>
#include <stdexcept>

namespace presage::testing {

namespace {

using Arrays = std::map<std::string, std::vector<double>>;

void oracle_foo(const std::map<std::string, int64_t>& args, Arrays& arrays) {
  int64_t n = args.at("n");
  auto& a = arrays.at("a");
  for (int64_t i = 1; i < n; ++i) a[static_cast<size_t>(2 * i - 2)] = static_cast<double>(i);
}

void oracle_jacobi(const std::map<std::string, int64_t>& args, Arrays& arrays) {
  int64_t n = args.at("n"), tsteps = args.at("tsteps");
  auto& A = arrays.at("A");
  auto& B = arrays.at("B");
  for (int64_t t = 0; t < tsteps; ++t) {
    for (int64_t i = 1; i < n - 1; ++i)
      for (int64_t j = 1; j < n - 1; ++j) {
        size_t c = static_cast<size_t>(i * n + j);
        B[c] = ((((A[c] + A[c - 1]) + A[c + 1]) + A[c + n]) + A[c - n]) * 0.2;
      }
    for (int64_t i = 1; i < n - 1; ++i)
      for (int64_t j = 1; j < n - 1; ++j) {
        size_t c = static_cast<size_t>(i * n + j);
        A[c] = ((((B[c] + B[c - 1]) + B[c + 1]) + B[c + n]) + B[c - n]) * 0.2;
      }
  }
}

void oracle_seidel(const std::map<std::string, int64_t>& args, Arrays& arrays) {
  int64_t n = args.at("n"), tsteps = args.at("tsteps");
  auto& A = arrays.at("A");
  for (int64_t t = 0; t < tsteps; ++t)
    for (int64_t i = 1; i < n - 1; ++i)
      for (int64_t j = 1; j < n - 1; ++j) {
        size_t c = static_cast<size_t>(i * n + j);
        size_t u = c - static_cast<size_t>(n), d = c + static_cast<size_t>(n);
        A[c] = ((((((((A[u - 1] + A[u]) + A[u + 1]) + A[c - 1]) + A[c]) + A[c + 1]) + A[d - 1]) +
                 A[d]) +
                A[d + 1]) /
               9.0;
      }
}

void oracle_adi(const std::map<std::string, int64_t>& args, Arrays& arrays) {
  int64_t n = args.at("n"), tsteps = args.at("tsteps");
  auto& A = arrays.at("A");
  for (int64_t t = 0; t < tsteps; ++t) {
    for (int64_t i = 0; i < n; ++i)
      for (int64_t j = 1; j < n; ++j) {
        size_t c = static_cast<size_t>(i * n + j);
        A[c] = A[c] - A[c - 1] * 0.5;
      }
    for (int64_t j = 0; j < n; ++j)
      for (int64_t i = 1; i < n; ++i) {
        size_t c = static_cast<size_t>(i * n + j);
        A[c] = A[c] - A[c - static_cast<size_t>(n)] * 0.5;
      }
  }
}

void oracle_fdtd(const std::map<std::string, int64_t>& args, Arrays& arrays) {
  int64_t n = args.at("n"), tsteps = args.at("tsteps");
  auto& ex = arrays.at("ex");
  auto& ey = arrays.at("ey");
  auto& hz = arrays.at("hz");
  for (int64_t t = 0; t < tsteps; ++t) {
    for (int64_t i = 1; i < n; ++i)
      for (int64_t j = 0; j < n; ++j) {
        size_t c = static_cast<size_t>(i * n + j);
        ey[c] = ey[c] - 0.5 * (hz[c] - hz[c - static_cast<size_t>(n)]);
      }
    for (int64_t i = 0; i < n; ++i)
      for (int64_t j = 1; j < n; ++j) {
        size_t c = static_cast<size_t>(i * n + j);
        ex[c] = ex[c] - 0.5 * (hz[c] - hz[c - 1]);
      }
    for (int64_t i = 0; i < n - 1; ++i)
      for (int64_t j = 0; j < n - 1; ++j) {
        size_t c = static_cast<size_t>(i * n + j);
        hz[c] = hz[c] - 0.7 * (((ex[c + 1] - ex[c]) + ey[c + static_cast<size_t>(n)]) - ey[c]);
      }
  }
}

void oracle_gesummv(const std::map<std::string, int64_t>& args, Arrays& arrays) {
  int64_t n = args.at("n");
  auto& A = arrays.at("A");
  auto& B = arrays.at("B");
  auto& x = arrays.at("x");
  auto& y = arrays.at("y");
  for (int64_t i = 0; i < n; ++i) {
    double acc1 = 0.0, acc2 = 0.0;
    for (int64_t j = 0; j < n; ++j) {
      size_t c = static_cast<size_t>(i * n + j);
      acc1 = (A[c] * x[static_cast<size_t>(j)]) + acc1;
      acc2 = (B[c] * x[static_cast<size_t>(j)]) + acc2;
    }
    y[static_cast<size_t>(i)] = (1.5 * acc1) + (1.2 * acc2);
  }
}

void oracle_atax(const std::map<std::string, int64_t>& args, Arrays& arrays) {
  int64_t n = args.at("n");
  auto& A = arrays.at("A");
  auto& x = arrays.at("x");
  auto& y = arrays.at("y");
  auto& tmp = arrays.at("tmp");
  for (int64_t j = 0; j < n; ++j) y[static_cast<size_t>(j)] = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int64_t j = 0; j < n; ++j)
      acc = acc + (A[static_cast<size_t>(i * n + j)] * x[static_cast<size_t>(j)]);
    tmp[static_cast<size_t>(i)] = acc;
  }
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = 0; j < n; ++j)
      y[static_cast<size_t>(j)] = y[static_cast<size_t>(j)] +
                                  (A[static_cast<size_t>(i * n + j)] * tmp[static_cast<size_t>(i)]);
}

void oracle_bicg(const std::map<std::string, int64_t>& args, Arrays& arrays) {
  int64_t n = args.at("n");
  auto& A = arrays.at("A");
  auto& s = arrays.at("s");
  auto& q = arrays.at("q");
  auto& p = arrays.at("p");
  auto& r = arrays.at("r");
  for (int64_t j = 0; j < n; ++j) s[static_cast<size_t>(j)] = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    double qacc = 0.0;
    double vr = r[static_cast<size_t>(i)];
    for (int64_t j = 0; j < n; ++j) {
      size_t c = static_cast<size_t>(i * n + j);
      s[static_cast<size_t>(j)] = s[static_cast<size_t>(j)] + (vr * A[c]);
      qacc = qacc + (A[c] * p[static_cast<size_t>(j)]);
    }
    q[static_cast<size_t>(i)] = qacc;
  }
}

void oracle_trmm(const std::map<std::string, int64_t>& args, Arrays& arrays) {
  int64_t n = args.at("n");
  auto& A = arrays.at("A");
  auto& B = arrays.at("B");
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = 0; j < n; ++j) {
      size_t c = static_cast<size_t>(i * n + j);
      double acc = B[c];
      for (int64_t k = i + 1; k < n; ++k)
        acc = acc + (A[static_cast<size_t>(k * n + i)] * B[static_cast<size_t>(k * n + j)]);
      B[c] = 1.5 * acc;
    }
}

void oracle_lu(const std::map<std::string, int64_t>& args, Arrays& arrays) {
  int64_t n = args.at("n");
  auto& A = arrays.at("A");
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j = 0; j < i; ++j) {
      size_t c = static_cast<size_t>(i * n + j);
      double num = A[c];
      for (int64_t k = 0; k < j; ++k)
        num = num - (A[static_cast<size_t>(i * n + k)] * A[static_cast<size_t>(k * n + j)]);
      A[c] = num / A[static_cast<size_t>(j * n + j)];
    }
    for (int64_t j = i; j < n; ++j) {
      size_t c = static_cast<size_t>(i * n + j);
      double num = A[c];
      for (int64_t k = 0; k < i; ++k)
        num = num - (A[static_cast<size_t>(i * n + k)] * A[static_cast<size_t>(k * n + j)]);
      A[c] = num;
    }
  }
}

void oracle_cholesky(const std::map<std::string, int64_t>& args, Arrays& arrays) {
  int64_t n = args.at("n");
  auto& A = arrays.at("A");
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j = 0; j < i; ++j) {
      size_t c = static_cast<size_t>(i * n + j);
      double num = A[c];
      for (int64_t k = 0; k < j; ++k)
        num = num - (A[static_cast<size_t>(i * n + k)] * A[static_cast<size_t>(j * n + k)]);
      A[c] = num / A[static_cast<size_t>(j * n + j)];
    }
    size_t cii = static_cast<size_t>(i * n + i);
    double d = A[cii];
    for (int64_t k = 0; k < i; ++k) {
      double v = A[static_cast<size_t>(i * n + k)];
      d = d - (v * v);
    }
    A[cii] = d;
  }
}

}  // namespace

void run_oracle(const std::string& name, const std::map<std::string, int64_t>& args,
                Arrays& arrays) {
  if (name == "foo1" || name == "foo2") return oracle_foo(args, arrays);
  if (name == "jacobi2d-mini") return oracle_jacobi(args, arrays);
  if (name == "seidel2d-mini") return oracle_seidel(args, arrays);
  if (name == "adi-mini") return oracle_adi(args, arrays);
  if (name == "fdtd-mini") return oracle_fdtd(args, arrays);
  if (name == "gesummv-mini") return oracle_gesummv(args, arrays);
  if (name == "atax-mini") return oracle_atax(args, arrays);
  if (name == "bicg-mini") return oracle_bicg(args, arrays);
  if (name == "trmm-mini") return oracle_trmm(args, arrays);
  if (name == "lu-mini") return oracle_lu(args, arrays);
  if (name == "cholesky-mini") return oracle_cholesky(args, arrays);
  throw std::runtime_error("no oracle for kernel " + name);
}

std::map<std::string, std::vector<double>> arrays_from_image(const MemoryImage& mem) {
  std::map<std::string, std::vector<double>> out;
  for (const auto& r : mem.regions) {
    std::vector<double> v(r.size / r.elem_size);
    std::memcpy(v.data(), r.data.data(), r.size);
    out[r.name] = std::move(v);
  }
  return out;
}

std::vector<uint8_t> bytes_of(const std::vector<double>& v) {
  std::vector<uint8_t> out(v.size() * sizeof(double));
  std::memcpy(out.data(), v.data(), out.size());
  return out;
}

}  // namespace presage::testing
