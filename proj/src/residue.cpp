#include "dwork/residue.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dwork {

namespace {

void require_same_modulus(const Residue& a, const Residue& b) {
    if (a.modulus() != b.modulus())
        throw std::logic_error("residue modulus mismatch: " + std::to_string(a.modulus()) +
                               " vs " + std::to_string(b.modulus()));
}

}  // namespace

Residue::Residue(long long value, int modulus) : value_(0), modulus_(modulus) {
    if (modulus < 1) throw std::logic_error("residue modulus must be positive");
    value_ = bracket(value, modulus);
}

Residue Residue::operator+(Residue other) const {
    require_same_modulus(*this, other);
    return {static_cast<long long>(value_) + other.value_, modulus_};
}

Residue Residue::operator-(Residue other) const {
    require_same_modulus(*this, other);
    return {static_cast<long long>(value_) - other.value_, modulus_};
}

Residue Residue::operator*(Residue other) const {
    require_same_modulus(*this, other);
    return {static_cast<long long>(value_) * other.value_, modulus_};
}

Residue Residue::operator-() const { return {-static_cast<long long>(value_), modulus_}; }

int bracket(Residue x) { return x.value(); }

int gcd_int(int a, int b) { return std::gcd(a, b); }

int euler_phi(int n) {
    int result = n;
    for (int p : prime_divisors(n)) result = result / p * (p - 1);
    return result;
}

std::vector<int> prime_divisors(int n) {
    std::vector<int> out;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<int> units(int d) {
    std::vector<int> out;
    for (int s = 1; s < d; ++s)
        if (std::gcd(s, d) == 1) out.push_back(s);
    if (d == 1) out.push_back(0);
    return out;
}

int inverse_mod(int s, int d) {
    s = bracket(s, d);
    for (int t = 1; t < d; ++t)
        if ((static_cast<long long>(s) * t) % d == 1) return t;
    throw std::domain_error(std::to_string(s) + " is not a unit mod " + std::to_string(d));
}

bool is_cyclic_ap(std::span<const int> set, int d) {
    std::vector<int> target(set.begin(), set.end());
    for (int& x : target) x = bracket(x, d);
    std::sort(target.begin(), target.end());
    const std::size_t n = target.size();
    std::vector<int> cand(n);
    for (int b = 0; b < d; ++b) {
        for (int k = 0; k < d; ++k) {
            for (std::size_t i = 0; i < n; ++i)
                cand[i] = static_cast<int>((b + static_cast<long long>(i) * k) % d);
            std::sort(cand.begin(), cand.end());
            if (cand == target) return true;
        }
    }
    return false;
}

bool is_equally_spaced(std::span<const int> set, int d) {
    const int n = static_cast<int>(set.size());
    if (n == 0 || d % n != 0) return false;
    std::vector<bool> member(static_cast<std::size_t>(d), false);
    for (int x : set) member[bracket(x, d)] = true;
    const int step = d / n;
    const int b = bracket(set[0], d);
    for (int k = 0; k < n; ++k)
        if (!member[(b + k * step) % d]) return false;
    return true;
}

bool is_cyclic_ap(std::span<const Residue> set) {
    if (set.empty()) return true;
    std::vector<int> v;
    for (const auto& r : set) {
        require_same_modulus(r, set.front());
        v.push_back(r.value());
    }
    return is_cyclic_ap(v, set.front().modulus());
}

UnitSubgroup::UnitSubgroup(int modulus, std::vector<int> elements)
    : modulus_(modulus), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

UnitSubgroup UnitSubgroup::trivial(int d) { return {d, {d == 1 ? 0 : 1}}; }

UnitSubgroup UnitSubgroup::full(int d) { return {d, units(d)}; }

UnitSubgroup UnitSubgroup::generated_by(int d, std::span<const int> gens) {
    std::set<int> seen{1 % d};
    std::vector<int> frontier{1 % d};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier) {
            for (int g : gens) {
                int y = static_cast<int>((static_cast<long long>(x) * bracket(g, d)) % d);
                if (seen.insert(y).second) next.push_back(y);
            }
        }
        frontier = std::move(next);
    }
    return {d, std::vector<int>(seen.begin(), seen.end())};
}

bool UnitSubgroup::contains(int s) const {
    return std::binary_search(elements_.begin(), elements_.end(), bracket(s, modulus_));
}

bool UnitSubgroup::contains(const UnitSubgroup& other) const {
    return std::includes(elements_.begin(), elements_.end(), other.elements_.begin(),
                         other.elements_.end());
}

std::string UnitSubgroup::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < elements_.size(); ++i) os << (i ? "," : "") << elements_[i];
    os << '}';
    return os.str();
}

std::vector<UnitSubgroup> unit_subgroups(int d) {
    static std::mutex mu;
    static std::map<int, std::vector<UnitSubgroup>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(d); it != cache.end()) return it->second;
    }

    const auto all = units(d);
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> queue{{1 % d}};
    found.insert(queue.front());
    // Iterated closure: every subgroup is reached by adjoining generators one at a time.
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const auto current = queue[i];
        for (int g : all) {
            if (std::binary_search(current.begin(), current.end(), g)) continue;
            std::vector<int> gens = current;
            gens.push_back(g);
            auto h = UnitSubgroup::generated_by(d, gens).elements();
            if (found.insert(h).second) queue.push_back(std::move(h));
        }
    }
    std::vector<UnitSubgroup> out;
    for (const auto& e : found) out.emplace_back(d, e);
    std::sort(out.begin(), out.end(), [](const UnitSubgroup& a, const UnitSubgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elements() < b.elements();
    });

    std::lock_guard lock(mu);
    cache.emplace(d, out);
    return out;
}

std::vector<UnitSubgroup> complements(const UnitSubgroup& u) {
    const int d = u.modulus();
    const std::size_t phi = units(d).size();
    std::vector<UnitSubgroup> out;
    for (const auto& v : unit_subgroups(d)) {
        if (u.order() * v.order() != phi) continue;
        bool trivial_meet = true;
        for (int x : v.elements())
            if (x != 1 % d && u.contains(x)) trivial_meet = false;
        if (!trivial_meet) continue;
        // |U||V| = phi with trivial intersection forces UV = (Z/dZ)^x.
        out.push_back(v);
    }
    return out;
}

std::vector<int> difference_multiset(std::span<const int> v, int d) {
    std::vector<int> out;
    out.reserve(v.size() * v.size());
    for (int a : v)
        for (int b : v) out.push_back(bracket(static_cast<long long>(a) - b, d));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Residue> difference_multiset(std::span<const Residue> v) {
    std::vector<Residue> out;
    for (const auto& a : v)
        for (const auto& b : v) out.push_back(a - b);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dwork
