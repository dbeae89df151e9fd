// Everything: groups, G-sets, indexing systems, the norm operad, normed
// categories, spans and JSON encodings.

#ifndef NINF_NINF_HPP_
#define NINF_NINF_HPP_

#include "perm.hpp"
#include "group.hpp"
#include "gset.hpp"
#include "indexing.hpp"
#include "norm_operad.hpp"
#include "normed_cat.hpp"
#include "burnside.hpp"
#include "io.hpp"

namespace ninf {
inline constexpr const char* kVersion = "0.1.0";
}

#endif // NINF_NINF_HPP_
