#pragma once

#include "ffcs/error.hpp"
#include "ffcs/interp.hpp"
#include "ffcs/solver.hpp"

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ffcs {

enum class Quantity { Price, Delta, Gamma, Speed, Theta, DeltaDecay, Color, MaxError, Rate };

/// Absolute: |value - expected| <= tol. Factor: expected/tol <= value <= expected*tol.
/// AtLeast: value >= expected - tol.
enum class Comparison { Absolute, Factor, AtLeast };

inline std::string_view to_string(Quantity q) noexcept {
    switch (q) {
        case Quantity::Price: return "price";
        case Quantity::Delta: return "delta";
        case Quantity::Gamma: return "gamma";
        case Quantity::Speed: return "speed";
        case Quantity::Theta: return "theta";
        case Quantity::DeltaDecay: return "delta_decay";
        case Quantity::Color: return "color";
        case Quantity::MaxError: return "max_error";
        case Quantity::Rate: return "rate";
    }
    return "?";
}

/// One published value. `key` is the asset price, or the step size for error/rate rows.
/// Time Greeks are tabulated as derivatives in calendar time.
struct ReferenceCell {
    std::string fixture;
    double key = 0.0;
    std::size_t regime = 0;  ///< zero-based
    Quantity quantity = Quantity::Price;
    double expected = 0.0;
    double tolerance = 0.0;
    Comparison comparison = Comparison::Absolute;

    [[nodiscard]] bool accepts(double value) const noexcept {
        switch (comparison) {
            case Comparison::Absolute: return std::abs(value - expected) <= tolerance;
            case Comparison::Factor: return value >= expected / tolerance && value <= expected * tolerance;
            case Comparison::AtLeast: return value >= expected - tolerance;
        }
        return false;
    }
};

/// Values produced by one solver configuration.
struct ReferenceColumn {
    std::string label;
    Method method = Method::GaussSeidel;
    Interpolation interpolation = Interpolation::Quintic;
    double h = 0.01;
    std::vector<ReferenceCell> cells;
};

struct ReferenceTable {
    std::string id;
    std::string title;
    std::vector<ReferenceColumn> columns;
    std::vector<std::string> notes;  ///< cells left out and why

    /// Column for a method/interpolation pair at step h; throws UnknownTable if absent.
    [[nodiscard]] const ReferenceColumn& column_for(Method m, Interpolation i, double h) const {
        for (const auto& c : columns)
            if (c.method == m && c.interpolation == i && std::abs(c.h - h) < 1e-12) return c;
        throw Error(ErrorCode::UnknownTable, "table " + id + " has no column for the requested method and step");
    }
};

namespace detail {

inline ReferenceColumn& column(ReferenceTable& t, std::string label, Method m, Interpolation i, double h) {
    return t.columns.emplace_back(ReferenceColumn{std::move(label), m, i, h, {}});
}

inline void add(ReferenceColumn* c, const char* fixture, Quantity q, std::size_t regime,
                std::initializer_list<std::pair<double, double>> rows, double tol,
                Comparison cmp = Comparison::Absolute) {
    for (const auto& [key, value] : rows) c->cells.push_back({fixture, key, regime, q, value, tol, cmp});
}

inline ReferenceTable table1() {
    ReferenceTable t{"1", "Example 1 prices, regime 1", {}, {}};
    ReferenceColumn* c = nullptr;
    c = &column(t, "GS+cubic h=0.1", Method::GaussSeidel, Interpolation::Cubic, 0.1);
    add(c, "two-regime-ex1", Quantity::Price, 0, {{3.5, 5.5000}, {4.0, 5.0068}, {4.5, 4.5475}, {6.0, 3.4189}, {7.5, 2.5873}, {8.5, 2.1539}, {9.0, 1.9759}, {9.5, 1.8043}, {10.5, 1.5170}, {12.0, 1.1833}}, 5e-3);
    c = &column(t, "GS+cubic h=0.05", Method::GaussSeidel, Interpolation::Cubic, 0.05);
    add(c, "two-regime-ex1", Quantity::Price, 0, {{3.5, 5.5000}, {4.0, 5.0035}, {4.5, 4.5442}, {6.0, 3.4142}, {7.5, 2.5854}, {8.5, 2.1553}, {9.0, 1.9722}, {9.5, 1.8062}, {10.5, 1.5190}, {12.0, 1.1802}}, 5e-3);
    c = &column(t, "GS+cubic h=0.01", Method::GaussSeidel, Interpolation::Cubic, 0.01);
    add(c, "two-regime-ex1", Quantity::Price, 0, {{3.5, 5.5000}, {4.0, 5.0033}, {4.5, 4.5433}, {6.0, 3.4143}, {7.5, 2.5842}, {8.5, 2.1559}, {9.0, 1.9720}, {9.5, 1.8056}, {10.5, 1.5185}, {12.0, 1.1803}}, 5e-3);
    c = &column(t, "GS+quintic h=0.1", Method::GaussSeidel, Interpolation::Quintic, 0.1);
    add(c, "two-regime-ex1", Quantity::Price, 0, {{3.5, 5.5000}, {4.5, 4.5475}, {6.0, 3.4190}, {7.5, 2.5874}, {8.5, 2.1540}, {9.0, 1.9760}, {9.5, 1.8044}, {10.5, 1.5170}, {12.0, 1.1833}}, 5e-3);
    c = &column(t, "GS+quintic h=0.05", Method::GaussSeidel, Interpolation::Quintic, 0.05);
    add(c, "two-regime-ex1", Quantity::Price, 0, {{3.5, 5.5000}, {4.0, 5.0035}, {4.5, 4.5442}, {6.0, 3.4143}, {7.5, 2.5854}, {8.5, 2.1553}, {9.0, 1.9723}, {9.5, 1.8062}, {10.5, 1.5190}, {12.0, 1.1802}}, 5e-3);
    c = &column(t, "GS+quintic h=0.01", Method::GaussSeidel, Interpolation::Quintic, 0.01);
    add(c, "two-regime-ex1", Quantity::Price, 0, {{4.0, 5.0033}, {4.5, 4.5433}, {6.0, 3.4143}, {7.5, 2.5842}, {8.5, 2.1559}, {9.0, 1.9720}, {9.5, 1.8056}, {10.5, 1.5185}, {12.0, 1.1803}}, 5e-3);
    c = &column(t, "Newton+cubic h=0.01", Method::Newton, Interpolation::Cubic, 0.01);
    add(c, "two-regime-ex1", Quantity::Price, 0, {{3.5, 5.5000}, {4.0, 5.0033}, {4.5, 4.5433}, {6.0, 3.4141}, {7.5, 2.5840}, {8.5, 2.1556}, {9.0, 1.9717}, {9.5, 1.8054}, {10.5, 1.5183}, {12.0, 1.1801}}, 5e-3);
    c = &column(t, "Newton+quintic h=0.01", Method::Newton, Interpolation::Quintic, 0.01);
    add(c, "two-regime-ex1", Quantity::Price, 0, {{4.0, 5.0033}, {4.5, 4.5433}, {6.0, 3.4141}, {7.5, 2.5840}, {8.5, 2.1556}, {9.0, 1.9717}, {9.5, 1.8054}, {10.5, 1.5183}, {12.0, 1.1801}}, 5e-3);
    t.notes.push_back("GS+quintic h=0.01 and Newton+quintic h=0.01 at S=3.5 print 5.0000, below the intrinsic value 5.5; excluded");
    t.notes.push_back("GS+quintic h=0.1 at S=4.0 prints 5.5069, inconsistent with every neighbouring column; excluded");
    return t;
}

inline ReferenceTable table2() {
    ReferenceTable t{"2", "Example 1 prices, regime 2", {}, {}};
    ReferenceColumn* c = nullptr;
    c = &column(t, "GS+cubic h=0.1", Method::GaussSeidel, Interpolation::Cubic, 0.1);
    add(c, "two-regime-ex1", Quantity::Price, 1, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5183}, {6.0, 3.3552}, {7.5, 2.5070}, {8.5, 2.0677}, {9.0, 1.8864}, {9.5, 1.7116}, {10.5, 1.4240}, {12.0, 1.0948}}, 5e-3);
    c = &column(t, "GS+cubic h=0.05", Method::GaussSeidel, Interpolation::Cubic, 0.05);
    add(c, "two-regime-ex1", Quantity::Price, 1, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5129}, {6.0, 3.3508}, {7.5, 2.5044}, {8.5, 2.0683}, {9.0, 1.8822}, {9.5, 1.7149}, {10.5, 1.4273}, {12.0, 1.0927}}, 5e-3);
    c = &column(t, "GS+cubic h=0.01", Method::GaussSeidel, Interpolation::Cubic, 0.01);
    add(c, "two-regime-ex1", Quantity::Price, 1, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5119}, {6.0, 3.3507}, {7.5, 2.5033}, {8.5, 2.0683}, {9.0, 1.8825}, {9.5, 1.7149}, {10.5, 1.4273}, {12.0, 1.0923}}, 5e-3);
    c = &column(t, "GS+quintic h=0.1", Method::GaussSeidel, Interpolation::Quintic, 0.1);
    add(c, "two-regime-ex1", Quantity::Price, 1, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5184}, {6.0, 3.3553}, {7.5, 2.5071}, {8.5, 2.0679}, {9.0, 1.8864}, {9.5, 1.7116}, {10.5, 1.4239}, {12.0, 1.0948}}, 5e-3);
    c = &column(t, "GS+quintic h=0.05", Method::GaussSeidel, Interpolation::Quintic, 0.05);
    add(c, "two-regime-ex1", Quantity::Price, 1, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5129}, {6.0, 3.3508}, {7.5, 2.5045}, {8.5, 2.0684}, {9.0, 1.8820}, {9.5, 1.7149}, {10.5, 1.4274}, {12.0, 1.0927}}, 5e-3);
    c = &column(t, "GS+quintic h=0.01", Method::GaussSeidel, Interpolation::Quintic, 0.01);
    add(c, "two-regime-ex1", Quantity::Price, 1, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5119}, {6.0, 3.3507}, {7.5, 2.5033}, {8.5, 2.0683}, {9.0, 1.8825}, {9.5, 1.7149}, {10.5, 1.4273}, {12.0, 1.0923}}, 5e-3);
    c = &column(t, "Newton+cubic h=0.01", Method::Newton, Interpolation::Cubic, 0.01);
    add(c, "two-regime-ex1", Quantity::Price, 1, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5119}, {6.0, 3.3504}, {7.5, 2.5030}, {8.5, 2.0681}, {9.0, 1.8822}, {9.5, 1.7146}, {10.5, 1.4271}, {12.0, 1.0921}}, 5e-3);
    c = &column(t, "Newton+quintic h=0.01", Method::Newton, Interpolation::Quintic, 0.01);
    add(c, "two-regime-ex1", Quantity::Price, 1, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5119}, {6.0, 3.3504}, {7.5, 2.5030}, {8.5, 2.0681}, {9.0, 1.8822}, {9.5, 1.7146}, {10.5, 1.4271}, {12.0, 1.0921}}, 5e-3);
    return t;
}

inline ReferenceTable table3() {
    ReferenceTable t{"3", "Example 1 prices at and above the strike", {}, {}};
    ReferenceColumn* c = nullptr;
    c = &column(t, "GS+quintic h=0.01", Method::GaussSeidel, Interpolation::Quintic, 0.01);
    add(c, "two-regime-ex1", Quantity::Price, 0, {{9.0, 1.9720}, {10.5, 1.5185}, {12.0, 1.1803}}, 5e-3);
    add(c, "two-regime-ex1", Quantity::Price, 1, {{9.0, 1.8825}, {10.5, 1.4273}, {12.0, 1.0923}}, 5e-3);
    return t;
}

inline ReferenceTable table4() {
    ReferenceTable t{"4", "Example 1 at S = 9, Newton variants", {}, {}};
    ReferenceColumn* c = nullptr;
    c = &column(t, "Newton+cubic h=0.01", Method::Newton, Interpolation::Cubic, 0.01);
    add(c, "two-regime-ex1", Quantity::Price, 0, {{9.0, 1.971738757801249}}, 5e-4);
    add(c, "two-regime-ex1", Quantity::Price, 1, {{9.0, 1.882203676543793}}, 5e-4);
    c = &column(t, "Newton+quintic h=0.01", Method::Newton, Interpolation::Quintic, 0.01);
    add(c, "two-regime-ex1", Quantity::Price, 0, {{9.0, 1.971733636374602}}, 5e-4);
    add(c, "two-regime-ex1", Quantity::Price, 1, {{9.0, 1.882198321043946}}, 5e-4);
    return t;
}

inline ReferenceTable table5() {
    ReferenceTable t{"5", "Example 1 delta, gamma and speed", {}, {}};
    ReferenceColumn* c = nullptr;
    c = &column(t, "GS+quintic h=0.01", Method::GaussSeidel, Interpolation::Quintic, 0.01);
    add(c, "two-regime-ex1", Quantity::Delta, 0, {{3.5, -1.0000}, {4.0, -0.9652}, {4.5, -0.8749}, {6.0, -0.6426}, {9.5, -0.3165}, {12.0, -0.1945}}, 1e-2);
    add(c, "two-regime-ex1", Quantity::Delta, 1, {{3.5, -1.0000}, {4.0, -1.0000}, {4.5, -0.9171}, {6.0, -0.6571}, {9.5, -0.3181}, {12.0, -0.1913}}, 1e-2);
    add(c, "two-regime-ex1", Quantity::Gamma, 0, {{3.5, 0.0000}, {4.0, 0.0164}, {4.5, 0.0508}, {6.0, 0.0851}, {9.5, 0.0560}, {12.0, 0.0347}}, 1e-2);
    add(c, "two-regime-ex1", Quantity::Gamma, 1, {{3.5, 0.0000}, {4.0, 0.0000}, {4.5, 0.0497}, {6.0, 0.0905}, {9.5, 0.0594}, {12.0, 0.0361}}, 1e-2);
    add(c, "two-regime-ex1", Quantity::Speed, 0, {{3.5, 0.0000}, {4.0, 0.0171}, {4.5, 0.0438}, {6.0, 0.0381}, {9.5, 0.0015}, {12.0, -0.0025}}, 1e-2);
    add(c, "two-regime-ex1", Quantity::Speed, 1, {{3.5, 0.0000}, {4.0, 0.0000}, {4.5, 0.0470}, {6.0, 0.0462}, {9.5, 0.0013}, {12.0, -0.0031}}, 1e-2);
    return t;
}

inline ReferenceTable table6() {
    ReferenceTable t{"6", "Example 1 theta, delta decay and color (calendar time)", {}, {}};
    ReferenceColumn* c = nullptr;
    c = &column(t, "GS+quintic h=0.01", Method::GaussSeidel, Interpolation::Quintic, 0.01);
    add(c, "two-regime-ex1", Quantity::Theta, 0, {{3.5, 0.0000}, {4.0, -0.0300}, {4.5, -0.1200}, {6.0, -0.4083}, {9.5, -0.7904}}, 2e-2);
    add(c, "two-regime-ex1", Quantity::Theta, 1, {{3.5, 0.0000}, {4.0, 0.0000}, {4.5, -0.0850}, {6.0, -0.4279}, {9.5, -0.8467}, {12.0, -0.8700}}, 2e-2);
    add(c, "two-regime-ex1", Quantity::DeltaDecay, 0, {{3.5, 0.0000}, {4.0, -0.0211}, {4.5, -0.0690}, {6.0, -0.1160}, {9.5, -0.0310}, {12.0, 0.0169}}, 2e-2);
    add(c, "two-regime-ex1", Quantity::DeltaDecay, 1, {{3.5, 0.0000}, {4.0, 0.0000}, {4.5, -0.0722}, {6.0, -0.1358}, {9.5, -0.0317}, {12.0, 0.0240}}, 2e-2);
    add(c, "two-regime-ex1", Quantity::Color, 0, {{3.5, 0.0000}, {4.0, -0.0086}, {4.5, -0.0229}, {6.0, -0.0125}, {9.5, 0.0108}, {12.0, 0.0061}}, 2e-2);
    add(c, "two-regime-ex1", Quantity::Color, 1, {{3.5, 0.0000}, {4.0, 0.0000}, {4.5, -0.0295}, {6.0, -0.0206}, {9.5, 0.0132}, {12.0, 0.0069}}, 2e-2);
    t.notes.push_back("regime 1 theta at S=12.0 prints +0.8248 while every other theta is negative; excluded");
    return t;
}

inline ReferenceTable table7() {
    ReferenceTable t{"7", "Example 3, regime 1 at S = 10", {}, {}};
    ReferenceColumn* c = nullptr;
    c = &column(t, "GS+quintic h=0.01", Method::GaussSeidel, Interpolation::Quintic, 0.01);
    add(c, "two-regime-ex3", Quantity::Price, 0, {{10.0, 1.1750372}}, 2e-3);
    c = &column(t, "Newton+quintic h=0.01", Method::Newton, Interpolation::Quintic, 0.01);
    add(c, "two-regime-ex3", Quantity::Price, 0, {{10.0, 1.1751356}}, 2e-3);
    return t;
}

inline ReferenceTable table8() {
    ReferenceTable t{"8", "Example 2, no switching", {}, {}};
    ReferenceColumn* c = nullptr;
    c = &column(t, "GS+cubic h=0.01", Method::GaussSeidel, Interpolation::Cubic, 0.01);
    add(c, "no-jump-ex2", Quantity::Price, 0, {{6.00, 3.666746420}, {9.00, 2.375408073}, {12.00, 1.604912489}}, 2e-3);
    add(c, "no-jump-ex2", Quantity::Price, 1, {{9.00, 0.888393716}, {12.00, 0.204583983}}, 2e-3);
    add(c, "no-jump-ex2", Quantity::Price, 1, {{6.00, 3.000000000}}, 1e-6);
    c = &column(t, "GS+quintic h=0.01", Method::GaussSeidel, Interpolation::Quintic, 0.01);
    add(c, "no-jump-ex2", Quantity::Price, 0, {{6.00, 3.666746420}, {9.00, 2.375408073}, {12.00, 1.604912489}}, 2e-3);
    add(c, "no-jump-ex2", Quantity::Price, 1, {{9.00, 0.888393716}, {12.00, 0.203637945}}, 2e-3);
    add(c, "no-jump-ex2", Quantity::Price, 1, {{6.00, 3.000000000}}, 1e-6);
    return t;
}

inline ReferenceTable table9() {
    ReferenceTable t{"9", "Example 1 regime-1 maximum errors and rates", {}, {}};
    ReferenceColumn* c = nullptr;
    c = &column(t, "GS+cubic", Method::GaussSeidel, Interpolation::Cubic, 0.1);
    add(c, "two-regime-ex1", Quantity::MaxError, 0, {{0.1, 5.344e-2}, {0.05, 6.269e-3}, {0.025, 6.329e-4}}, 2.0, Comparison::Factor);
    add(c, "two-regime-ex1", Quantity::Rate, 0, {{0.05, 3.09}, {0.025, 3.31}}, 0.25, Comparison::AtLeast);
    c = &column(t, "GS+quintic", Method::GaussSeidel, Interpolation::Quintic, 0.1);
    add(c, "two-regime-ex1", Quantity::MaxError, 0, {{0.1, 5.128e-2}, {0.05, 6.196e-3}, {0.025, 6.806e-4}}, 2.0, Comparison::Factor);
    add(c, "two-regime-ex1", Quantity::Rate, 0, {{0.05, 3.05}, {0.025, 3.19}}, 0.25, Comparison::AtLeast);
    t.notes.push_back("key is the coarse step h of each comparison; the study runs h = 0.1, 0.05, 0.025, 0.0125 with k = h^2");
    return t;
}

inline ReferenceTable table11() {
    ReferenceTable t{"11", "Four-regime prices", {}, {}};
    ReferenceColumn* c = nullptr;
    c = &column(t, "GS+quintic h=0.01", Method::GaussSeidel, Interpolation::Quintic, 0.01);
    add(c, "four-regime", Quantity::Price, 0, {{7.5, 3.1418}, {9.0, 2.5545}, {10.5, 2.1015}, {12.0, 1.7525}}, 5e-3);
    add(c, "four-regime", Quantity::Price, 1, {{7.5, 2.2319}, {9.0, 1.5835}, {10.5, 1.1414}, {12.0, 0.8374}}, 5e-3);
    add(c, "four-regime", Quantity::Price, 2, {{7.5, 2.6746}, {9.0, 2.0567}, {10.5, 1.6012}, {12.0, 1.2621}}, 5e-3);
    add(c, "four-regime", Quantity::Price, 3, {{7.5, 1.6578}, {9.0, 0.9858}, {10.5, 0.6553}, {12.0, 0.4706}}, 5e-3);
    return t;
}

inline ReferenceTable table12() {
    ReferenceTable t{"12", "Eight- and sixteen-regime prices, GS+quintic", {}, {}};
    ReferenceColumn* c = nullptr;
    c = &column(t, "GS+quintic h=0.01", Method::GaussSeidel, Interpolation::Quintic, 0.01);
    add(c, "eight-regime", Quantity::Price, 0, {{3.5, 5.5551}, {4.0, 5.1238}, {4.5, 4.7190}, {6.0, 3.6630}, {7.5, 2.8399}, {8.5, 2.4071}, {9.0, 2.2204}, {9.5, 2.0509}, {10.5, 1.7572}, {12.0, 1.4083}}, 5e-3);
    add(c, "eight-regime", Quantity::Price, 1, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0000}, {7.5, 1.7960}, {8.5, 1.2861}, {9.0, 1.0918}, {9.5, 0.9290}, {10.5, 0.6782}, {12.0, 0.4332}}, 5e-3);
    add(c, "eight-regime", Quantity::Price, 3, {{3.5, 5.5000}, {4.0, 5.0006}, {4.5, 4.5319}, {6.0, 3.3646}, {7.5, 2.4955}, {8.5, 2.0532}, {9.0, 1.8658}, {9.5, 1.6980}, {10.5, 1.4124}, {12.0, 1.0833}}, 5e-3);
    add(c, "eight-regime", Quantity::Price, 5, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0001}, {7.5, 1.8250}, {8.5, 1.3135}, {9.0, 1.1166}, {9.5, 0.9508}, {10.5, 0.6942}, {12.0, 0.4426}}, 5e-3);
    add(c, "eight-regime", Quantity::Price, 7, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0000}, {7.5, 1.5300}, {8.5, 0.9336}, {9.0, 0.7455}, {9.5, 0.6030}, {10.5, 0.4092}, {12.0, 0.2480}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 0, {{3.5, 5.5000}, {4.5, 4.5385}, {6.0, 3.2833}, {7.5, 2.3075}, {8.5, 1.8260}, {9.0, 1.6287}, {9.5, 1.4560}, {10.5, 1.1718}, {12.0, 0.8614}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 1, {{3.5, 5.5000}, {4.5, 4.5000}, {6.0, 3.0000}, {7.5, 1.7145}, {8.5, 1.2060}, {9.0, 1.0207}, {9.5, 0.8696}, {10.5, 0.6434}, {12.0, 0.4285}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 3, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0872}, {7.5, 2.1058}, {8.5, 1.6495}, {9.0, 1.4661}, {9.5, 1.3071}, {10.5, 1.0483}, {12.0, 0.7690}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 5, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0000}, {7.5, 1.6227}, {8.5, 1.1088}, {9.0, 0.9311}, {9.5, 0.7898}, {10.5, 0.5842}, {12.0, 0.3928}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 7, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0000}, {7.5, 1.6624}, {8.5, 1.1533}, {9.0, 0.9730}, {9.5, 0.8272}, {10.5, 0.6112}, {12.0, 0.4079}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 11, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.1064}, {7.5, 2.1162}, {8.5, 1.6496}, {9.0, 1.4618}, {9.5, 1.2990}, {10.5, 1.0346}, {12.0, 0.7508}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 15, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0000}, {7.5, 1.6248}, {8.5, 1.1144}, {9.0, 0.9378}, {9.5, 0.7963}, {10.5, 0.5883}, {12.0, 0.3936}}, 5e-3);
    t.notes.push_back("sixteen regimes at S=4.0: regime 1 and 2 entries are swapped relative to the Newton table; excluded");
    return t;
}

inline ReferenceTable table13() {
    ReferenceTable t{"13", "Eight- and sixteen-regime prices, Newton+quintic", {}, {}};
    ReferenceColumn* c = nullptr;
    c = &column(t, "Newton+quintic h=0.01", Method::Newton, Interpolation::Quintic, 0.01);
    add(c, "eight-regime", Quantity::Price, 0, {{3.5, 5.5555}, {4.0, 5.1244}, {4.5, 4.7197}, {6.0, 3.6639}, {7.5, 2.8408}, {8.5, 2.4081}, {9.0, 2.2214}, {9.5, 2.0519}, {10.5, 1.7582}, {12.0, 1.4092}}, 5e-3);
    add(c, "eight-regime", Quantity::Price, 1, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0000}, {7.5, 1.7962}, {8.5, 1.2864}, {9.0, 1.0921}, {9.5, 0.9293}, {10.5, 0.6785}, {12.0, 0.4334}}, 5e-3);
    add(c, "eight-regime", Quantity::Price, 3, {{3.5, 5.5000}, {4.0, 5.0006}, {4.5, 4.5320}, {6.0, 3.3649}, {7.5, 2.4959}, {8.5, 2.0536}, {9.0, 1.8662}, {9.5, 1.6985}, {10.5, 1.4129}, {12.0, 1.0838}}, 5e-3);
    add(c, "eight-regime", Quantity::Price, 5, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0001}, {7.5, 1.8252}, {8.5, 1.3138}, {9.0, 1.1169}, {9.5, 0.9510}, {10.5, 0.6945}, {12.0, 0.4428}}, 5e-3);
    add(c, "eight-regime", Quantity::Price, 7, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0000}, {7.5, 1.5301}, {8.5, 0.9338}, {9.0, 0.7457}, {9.5, 0.6033}, {10.5, 0.4094}, {12.0, 0.2482}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 0, {{3.5, 5.5000}, {4.0, 5.0075}, {4.5, 4.5387}, {6.0, 3.2836}, {7.5, 2.3078}, {8.5, 1.8264}, {9.0, 1.6290}, {9.5, 1.4563}, {10.5, 1.1721}, {12.0, 0.8617}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 1, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0000}, {7.5, 1.7145}, {8.5, 1.2061}, {9.0, 1.0209}, {9.5, 0.8697}, {10.5, 0.6435}, {12.0, 0.4286}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 3, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0872}, {7.5, 2.1059}, {8.5, 1.6496}, {9.0, 1.4662}, {9.5, 1.3072}, {10.5, 1.0484}, {12.0, 0.7692}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 5, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0000}, {7.5, 1.6227}, {8.5, 1.1089}, {9.0, 0.9312}, {9.5, 0.7900}, {10.5, 0.5884}, {12.0, 0.3929}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 7, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0000}, {7.5, 1.6611}, {8.5, 1.1555}, {9.0, 0.9767}, {9.5, 0.8319}, {10.5, 0.6114}, {12.0, 0.4081}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 11, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.1064}, {7.5, 2.1163}, {8.5, 1.6497}, {9.0, 1.4619}, {9.5, 1.2992}, {10.5, 1.0347}, {12.0, 0.7509}}, 5e-3);
    add(c, "sixteen-regime", Quantity::Price, 15, {{3.5, 5.5000}, {4.0, 5.0000}, {4.5, 4.5000}, {6.0, 3.0000}, {7.5, 1.6249}, {8.5, 1.1146}, {9.0, 0.9379}, {9.5, 0.7964}, {10.5, 0.5885}, {12.0, 0.3938}}, 5e-3);
    return t;
}

inline ReferenceTable table14() {
    ReferenceTable t{"14", "Four-regime delta, gamma and speed", {}, {}};
    ReferenceColumn* c = nullptr;
    c = &column(t, "GS+quintic h=0.01", Method::GaussSeidel, Interpolation::Quintic, 0.01);
    add(c, "four-regime", Quantity::Delta, 0, {{3.5, -0.8246}, {6.0, -0.5739}, {9.0, -0.3401}, {12.0, -0.2055}}, 1e-2);
    add(c, "four-regime", Quantity::Delta, 1, {{3.5, -1.0000}, {6.0, -0.7442}, {9.0, -0.3546}, {12.0, -0.1679}}, 1e-2);
    add(c, "four-regime", Quantity::Delta, 3, {{3.5, -1.0000}, {6.0, -1.0000}, {9.0, -0.3026}, {12.0, -0.0958}}, 1e-2);
    add(c, "four-regime", Quantity::Gamma, 0, {{3.5, 0.0515}, {6.0, 0.0638}, {9.0, 0.0488}, {12.0, 0.0289}}, 1e-2);
    add(c, "four-regime", Quantity::Gamma, 1, {{3.5, 0.0000}, {6.0, 0.0723}, {9.0, 0.0727}, {12.0, 0.0370}}, 1e-2);
    add(c, "four-regime", Quantity::Gamma, 3, {{3.5, 0.0000}, {6.0, 0.0000}, {9.0, 0.1086}, {12.0, 0.0269}}, 1e-2);
    add(c, "four-regime", Quantity::Speed, 0, {{3.5, 0.0949}, {6.0, 0.0204}, {9.0, 0.0005}, {12.0, -0.0023}}, 1e-2);
    add(c, "four-regime", Quantity::Speed, 1, {{3.5, 0.0000}, {6.0, 0.0262}, {9.0, 0.0011}, {12.0, -0.0048}}, 1e-2);
    add(c, "four-regime", Quantity::Speed, 3, {{3.5, 0.0000}, {6.0, 0.0000}, {9.0, -0.0027}, {12.0, -0.0081}}, 1e-2);
    return t;
}
}  // namespace detail

/// Every embedded table, in id order.
inline std::vector<ReferenceTable> reference_tables() {
    return {detail::table1(), detail::table2(),  detail::table3(),  detail::table4(),  detail::table5(),
            detail::table6(), detail::table7(),  detail::table8(),  detail::table9(),  detail::table11(),
            detail::table12(), detail::table13(), detail::table14()};
}

inline ReferenceTable find_table(std::string_view id) {
    for (auto& t : reference_tables())
        if (t.id == id) return t;
    throw Error(ErrorCode::UnknownTable, "no reference table '" + std::string(id) + "'");
}

}  // namespace ffcs
