#pragma once

// θ×p pictures of a segmentation: dot size tracks mass, binding obedience
// cells are highlighted.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "segmarket/matrix.hpp"
#include "segmarket/model.hpp"
#include "segmarket/rational.hpp"

namespace segmarket {

/// Nonzero at (t, p) when price θ_t ≠ p ties with p in nonempty segment p.
inline Matrix<unsigned char> binding_cells(const Segmentation& seg) {
    Matrix<unsigned char> out(seg.size(), seg.size(), 0);
    for (std::size_t p : seg.price_support())
        for (std::size_t q : binding_indices(seg, p))
            if (q != p) out(q, p) = 1;
    return out;
}

namespace detail {

// Quantile rank of `value` among the sorted positive masses, mapped to 0..levels-1.
inline std::size_t mass_level(const std::vector<Rational>& sorted, const Rational& value, std::size_t levels) {
    const auto rank = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), value) - sorted.begin());
    const std::size_t count = sorted.size();
    if (count <= 1 || rank == 0) return levels - 1;
    return (rank * levels + count - 1) / count - 1;
}

inline std::vector<Rational> sorted_positive(const Segmentation& seg) {
    std::vector<Rational> v;
    for (const auto& m : seg.sigma().data())
        if (m > 0) v.push_back(m);
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace detail

/// Rows are types from the highest down, columns prices. Glyphs: '.' for an
/// empty cell in Ω, then 'o', 'O', '@' by mass quantile; binding cells are
/// bracketed.
inline std::string render_ascii(const Segmentation& seg) {
    static constexpr char ramp[] = {'o', 'O', '@'};
    const auto& g = seg.grid();
    const std::size_t k = seg.size();
    const auto sorted = detail::sorted_positive(seg);
    const auto binds = binding_cells(seg);
    std::size_t label = 1;
    for (std::size_t i = 0; i < k; ++i) label = std::max(label, to_string(g[i]).size());

    std::ostringstream os;
    for (std::size_t t = k; t-- > 0;) {
        const std::string name = to_string(g[t]);
        os << std::string(label - name.size(), ' ') << name << " |";
        for (std::size_t p = 0; p < k; ++p) {
            const Rational& m = seg.mass(t, p);
            char glyph = ' ';
            if (m > 0) glyph = ramp[detail::mass_level(sorted, m, 3)];
            else if (p <= t) glyph = '.';
            if (binds(t, p)) os << '[' << glyph << ']';
            else os << ' ' << glyph << ' ';
        }
        os << '\n';
    }
    os << std::string(label, ' ') << " +" << std::string(3 * k, '-') << '\n';
    os << std::string(label, ' ') << "  ";
    for (std::size_t p = 0; p < k; ++p) {
        std::string name = to_string(g[p]);
        if (name.size() > 3) name = name.substr(0, 3);
        const std::size_t pad = 3 - name.size();
        os << std::string(pad / 2 + (pad % 2), ' ') << name << std::string(pad / 2, ' ');
    }
    os << "\n\n";
    os << "rows: type, columns: price; o < O < @ by mass, [ ] binding obedience\n";
    return os.str();
}

/// Circle area proportional to mass; binding cells drawn in orange.
inline std::string render_svg(const Segmentation& seg) {
    const auto& g = seg.grid();
    const std::size_t k = seg.size();
    const double cell = 60.0, margin = 50.0, rmax = cell * 0.45;
    const double side = margin * 2 + cell * static_cast<double>(k);
    const auto binds = binding_cells(seg);
    Rational largest = 0;
    for (const auto& m : seg.sigma().data()) largest = std::max(largest, m);

    auto cx = [&](std::size_t p) { return margin + cell * (static_cast<double>(p) + 0.5); };
    auto cy = [&](std::size_t t) { return margin + cell * (static_cast<double>(k - 1 - t) + 0.5); };

    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side << "\" viewBox=\"0 0 "
       << side << ' ' << side << "\">\n";
    os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // Ω: cells with θ ≥ p.
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t p = 0; p <= t; ++p)
            os << "  <rect x=\"" << cx(p) - cell / 2 << "\" y=\"" << cy(t) - cell / 2 << "\" width=\"" << cell
               << "\" height=\"" << cell << "\" fill=\"#eeeeee\" stroke=\"#dddddd\"/>\n";
    for (std::size_t i = 0; i < k; ++i) {
        os << "  <text x=\"" << cx(i) << "\" y=\"" << side - margin / 2 << "\" font-size=\"14\" text-anchor=\"middle\">"
           << to_string(g[i]) << "</text>\n";
        os << "  <text x=\"" << margin / 2 << "\" y=\"" << cy(i) + 5 << "\" font-size=\"14\" text-anchor=\"middle\">"
           << to_string(g[i]) << "</text>\n";
    }
    os << "  <text x=\"" << side / 2 << "\" y=\"" << side - 5 << "\" font-size=\"12\" text-anchor=\"middle\">price</text>\n";
    os << "  <text x=\"12\" y=\"" << side / 2 << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 12 "
       << side / 2 << ")\">type</text>\n";
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t p = 0; p < k; ++p) {
            const Rational& m = seg.mass(t, p);
            const char* colour = binds(t, p) ? "#f28e2b" : "#1f3b73";
            if (m > 0) {
                const double r = rmax * std::sqrt(to_double(m / largest));
                os << "  <circle cx=\"" << cx(p) << "\" cy=\"" << cy(t) << "\" r=\"" << r << "\" fill=\"" << colour
                   << "\"><title>" << to_string(m) << "</title></circle>\n";
            } else if (binds(t, p)) {
                os << "  <circle cx=\"" << cx(p) << "\" cy=\"" << cy(t) << "\" r=\"4.00\" fill=\"none\" stroke=\""
                   << colour << "\" stroke-width=\"2\"/>\n";
            }
        }
    os << "</svg>\n";
    return os.str();
}

}  // namespace segmarket
