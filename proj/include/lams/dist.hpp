// Copyright 2026 The lams Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lams/error.hpp"
#include "lams/scalar.hpp"
#include "lams/term.hpp"

namespace lams {

inline constexpr double kProbTol = 1e-9;

// Payload policy: `less` orders entries canonically, `same` decides merging.
template <class T>
struct DistTraits;

template <>
struct DistTraits<TermPtr> {
    static bool less(const TermPtr& a, const TermPtr& b) { return compareTerm(a, b) < 0; }
    static bool same(const TermPtr& a, const TermPtr& b) { return termEq(a, b); }
};

// Finite probability distribution. Invariants: entries have p > 0, payloads
// are pairwise distinct under DistTraits<T>::same, entries are sorted by
// DistTraits<T>::less, and the probabilities sum to 1 within kProbTol.
template <class T>
class Dist {
public:
    using Entry = std::pair<double, T>;

    Dist() = default;

    static Dist point(T v) {
        Dist d;
        d.entries_.emplace_back(1.0, std::move(v));
        return d;
    }

    // Merges equal payloads, drops zero-probability entries and sorts.
    static Dist normalize(std::vector<Entry> raw, double tol = kProbTol) {
        double total = 0;
        for (const auto& e : raw) total += e.first;
        if (std::abs(total - 1.0) > tol)
            throw SumNotOne("probabilities sum to " + std::to_string(total));
        return fromUnchecked(std::move(raw));
    }

    // As normalize, but rescales instead of rejecting a deficient total.
    static Dist renormalize(std::vector<Entry> raw) {
        double total = 0;
        for (const auto& e : raw) total += e.first;
        if (total <= 0) throw SumNotOne("empty distribution");
        for (auto& e : raw) e.first /= total;
        return fromUnchecked(std::move(raw));
    }

    const std::vector<Entry>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }
    bool isPoint() const { return entries_.size() == 1; }
    const T& only() const { return entries_.front().second; }

    double total() const {
        double s = 0;
        for (const auto& e : entries_) s += e.first;
        return s;
    }

    // Kleisli extension: sum_i p_i * f(a_i).
    template <class U>
    Dist<U> bind(const std::function<Dist<U>(const T&)>& f) const {
        std::vector<typename Dist<U>::Entry> raw;
        for (const auto& [p, v] : entries_) {
            const Dist<U> out = f(v);
            for (const auto& [q, w] : out.entries()) raw.emplace_back(p * q, w);
        }
        return Dist<U>::fromUnchecked(std::move(raw));
    }

    template <class U>
    Dist<U> map(const std::function<U(const T&)>& f) const {
        std::vector<typename Dist<U>::Entry> raw;
        for (const auto& [p, v] : entries_) raw.emplace_back(p, f(v));
        return Dist<U>::fromUnchecked(std::move(raw));
    }

    static Dist fromUnchecked(std::vector<Entry> raw) {
        Dist d;
        for (auto& [p, v] : raw) {
            if (!(p > 0)) continue;
            auto it = std::find_if(d.entries_.begin(), d.entries_.end(),
                                   [&](const Entry& e) { return DistTraits<T>::same(e.second, v); });
            if (it != d.entries_.end())
                it->first += p;
            else
                d.entries_.emplace_back(p, std::move(v));
        }
        std::stable_sort(d.entries_.begin(), d.entries_.end(), [](const Entry& a, const Entry& b) {
            return DistTraits<T>::less(a.second, b.second);
        });
        return d;
    }

private:
    std::vector<Entry> entries_;
};

// Tolerant equality: same support under `same`, probabilities within `tol`.
template <class T>
bool distEq(const Dist<T>& a, const Dist<T>& b, double tol,
            const std::function<bool(const T&, const T&)>& same) {
    auto covered = [&](const Dist<T>& x, const Dist<T>& y) {
        for (const auto& [p, v] : x.entries()) {
            double q = 0;
            for (const auto& [pw, w] : y.entries())
                if (same(v, w)) q += pw;
            double px = 0;
            for (const auto& [pv, v2] : x.entries())
                if (same(v, v2)) px += pv;
            if (std::abs(px - q) > tol) return false;
        }
        return true;
    };
    return covered(a, b) && covered(b, a);
}

// Merge-and-drop normalization of a raw list of (probability, term).
Dist<TermPtr> distNormalize(std::vector<std::pair<double, TermPtr>> raw);

// Product distribution (the monoidal map of the distribution monad).
template <class A, class B, class C>
Dist<C> distPair(const Dist<A>& a, const Dist<B>& b, const std::function<C(const A&, const B&)>& f) {
    std::vector<typename Dist<C>::Entry> raw;
    for (const auto& [p, x] : a.entries())
        for (const auto& [q, y] : b.entries()) raw.emplace_back(p * q, f(x, y));
    return Dist<C>::fromUnchecked(std::move(raw));
}

}  // namespace lams
