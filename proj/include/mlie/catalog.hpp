#pragma once

#include "mlie/algebra.hpp"
#include "mlie/grading.hpp"

#include <string>
#include <vector>

namespace mlie {

/// A cocycle transcribed from a published table, with its advertised weight.
struct CatalogCocycle {
    std::string table;       // "gh21", "gh31" or "hI22"
    std::string name;        // e.g. "c_{4,-2}", "c_{-2}^3"
    std::vector<int> weight; // in the table's weight mode
    std::string text;        // parse_cochain syntax; "..." marks elided terms
};

/// Algebra a table lives on: gh21 -> h'_Pi(2;2,2), gh31 -> h'_Pi(2;2,3), hI22 -> h_I(2;2,2).
Algebra catalog_algebra(const std::string& table);
WeightMode catalog_mode(const std::string& table);
const std::vector<CatalogCocycle>& catalog_cocycles();
std::vector<CatalogCocycle> catalog_table(const std::string& table);
const CatalogCocycle& catalog_entry(const std::string& table, const std::string& name);

/// Jurman cocycle sum_{m<n} p^(2^g-1) q^(m+n-3) (x) d(q^(m))^d(q^(n)) on h'_Pi(2;g,h+1);
/// with swap the roles of p and q are exchanged.
Cochain2 jurman_cocycle(const Algebra& hpi, int g, int h, bool swap = false);

}
