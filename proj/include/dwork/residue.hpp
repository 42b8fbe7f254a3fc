#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dwork {

// Element of Z/dZ. Binary operations on residues of different moduli throw
// std::logic_error.
class Residue {
public:
    Residue(long long value, int modulus);

    int value() const { return value_; }
    int modulus() const { return modulus_; }

    Residue operator+(Residue other) const;
    Residue operator-(Residue other) const;
    Residue operator*(Residue other) const;
    Residue operator-() const;

    bool operator==(const Residue&) const = default;
    auto operator<=>(const Residue&) const = default;

private:
    int value_;
    int modulus_;
};

// The representative [x] in {0, ..., d-1}.
int bracket(Residue x);

// Integer form used by the hot paths: [x mod d].
inline int bracket(long long x, int d) {
    long long r = x % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

int gcd_int(int a, int b);
int euler_phi(int n);
std::vector<int> prime_divisors(int n);

// Units of Z/dZ in increasing order.
std::vector<int> units(int d);
int inverse_mod(int s, int d);

// True iff the set equals {b, b+k, ..., b+(n-1)k} for some b, k in Z/dZ.
// Exhaustive scan over (b, k).
bool is_cyclic_ap(std::span<const int> set, int d);
bool is_cyclic_ap(std::span<const Residue> set);

// True iff n | d and the set is a coset b + (d/n)Z/dZ, i.e. n equally spaced
// points on the circle.
bool is_equally_spaced(std::span<const int> set, int d);

class UnitSubgroup {
public:
    // elements must be a subgroup of (Z/dZ)^x; they are sorted on entry.
    UnitSubgroup(int modulus, std::vector<int> elements);

    static UnitSubgroup trivial(int d);
    static UnitSubgroup full(int d);
    // Smallest subgroup containing the given units.
    static UnitSubgroup generated_by(int d, std::span<const int> gens);

    int modulus() const { return modulus_; }
    const std::vector<int>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }
    bool contains(int s) const;
    bool contains(const UnitSubgroup& other) const;

    std::string to_string() const;

    bool operator==(const UnitSubgroup&) const = default;

private:
    int modulus_;
    std::vector<int> elements_;
};

// Every subgroup of (Z/dZ)^x exactly once, ordered by (order, elements).
std::vector<UnitSubgroup> unit_subgroups(int d);

// All V with U n V = {1} and UV = (Z/dZ)^x.
std::vector<UnitSubgroup> complements(const UnitSubgroup& u);

// {v_i - v_j} over all ordered pairs, sorted.
std::vector<int> difference_multiset(std::span<const int> v, int d);
std::vector<Residue> difference_multiset(std::span<const Residue> v);

}  // namespace dwork
