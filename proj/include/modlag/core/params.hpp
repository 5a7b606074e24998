// SPDX-License-Identifier: MIT
// Parameter table: the ordered list of scalar symbols a context knows about.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "modlag/error.hpp"

namespace modlag {

// Hard cap on the number of scalar parameters; exponent vectors are fixed
// size arrays of this length.
inline constexpr int max_params = 12;

// Exponent vector of a monomial in the parameters.
using ExpVec = std::array<std::uint8_t, max_params>;

inline ExpVec zero_exp() {
    return ExpVec{};
}

// Ordered parameter table. The first four slots are always the structural
// parameters alpha, c, dt, dx; user parameters follow; an optional
// cosine/sine pair used by the equivariance checks comes last. The pair
// carries the ring relation sin^2 = 1 - cos^2, which the polynomial layer
// applies after every product so stored sine exponents never exceed one.
class ParamTable {
public:
    ParamTable() {
        names_ = {"alpha", "c", "dt", "dx"};
    }

    int size() const { return static_cast<int>(names_.size()); }

    const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }

    int find(std::string_view n) const {
        for (int i = 0; i < size(); ++i)
            if (names_[static_cast<std::size_t>(i)] == n) return i;
        return -1;
    }

    int require(std::string_view n) const {
        int i = find(n);
        if (i < 0) throw ContextError("unknown parameter: " + std::string(n));
        return i;
    }

    int add_user(std::string_view n) {
        if (trig_cos_ >= 0)
            throw ContextError("user parameters must be declared before the angle pair");
        if (find(n) >= 0) throw ContextError("duplicate parameter: " + std::string(n));
        if (size() >= max_params) throw ContextError("parameter table is full");
        names_.emplace_back(n);
        return size() - 1;
    }

    // Declares the cosine/sine pair for rotation-equivariance checks.
    void add_angle_pair(std::string_view cos_name, std::string_view sin_name) {
        if (trig_cos_ >= 0) throw ContextError("angle pair already declared");
        if (size() + 2 > max_params) throw ContextError("parameter table is full");
        names_.emplace_back(cos_name);
        names_.emplace_back(sin_name);
        trig_cos_ = size() - 2;
        trig_sin_ = size() - 1;
    }

    int cos_index() const { return trig_cos_; }
    int sin_index() const { return trig_sin_; }

    static constexpr int alpha = 0;
    static constexpr int c = 1;
    static constexpr int dt = 2;
    static constexpr int dx = 3;

private:
    std::vector<std::string> names_;
    int trig_cos_ = -1;
    int trig_sin_ = -1;
};

} // namespace modlag
