// Transfers for C4 with values in Z/5 and in functions on C4/C2:
//   - transfer of constants multiplies by the index,
//   - restriction after transfer splits along double cosets,
//   - an incomplete indexing system refuses the transfer it does not admit,
//   - the transfer span, read as an H-set over A, is a fixed norm object.

#include <iostream>

#include "ninf/ninf.hpp"

using namespace ninf;

namespace {

void print_row(const std::string& label, const IndexMap& in, const IndexMap& out) {
  std::cout << "  " << label << ' ' << to_string(in) << " -> " << to_string(out) << '\n';
}

} // namespace

int main() {
  const Group g = groups::cyclic(4);
  const SubgroupId e = g.trivial_subgroup();
  const SubgroupId c2 = parse_subgroup(g, "C2");
  const SubgroupId all = g.whole();
  const IndexingSystem s = complete_system(g);

  std::cout << "group " << g.name() << ", complete indexing system\n\n";

  const auto z5 = CommutativeGMonoid::zmod(g, 5);
  std::cout << "Z/5, transfer on constants (expect index * x mod 5):\n";
  for (auto [k, h] : {std::pair{e, c2}, std::pair{c2, all}, std::pair{e, all}}) {
    const auto tr = transfer_span(s, k, h);
    std::cout << " " << g.subgroup_order(k) << " -> " << g.subgroup_order(h) << " (index " << g.index(k, h) << ")\n";
    for (int x = 1; x < 5; x += 2) {
      const IndexMap constant(static_cast<std::size_t>(tr.source.size()), x);
      print_row("x=" + std::to_string(x), constant, mackey_eval(z5, tr, constant));
    }
  }

  // functions on C4/C2 mod 2: restriction of a transfer is a sum of conjugates
  std::cout << "\nfunctions C4/C2 -> Z/2, restriction to C2 after transfer from C2:\n";
  const auto fm = CommutativeGMonoid::functions(orbit_gset(g, c2), 2);
  const auto up = transfer_span(s, c2, all);
  const auto down = restriction_span(s, c2, all);
  const auto round_trip = compose_spans(s, up, down);
  std::cout << "  composite apex orbits:";
  for (SubgroupId k : orbit_type(round_trip.apex))
    std::cout << " C4/#" << k;
  std::cout << "\n";
  for (const auto& phi : equivariant_functions(fm, up.source)) {
    const auto out = mackey_eval(fm, round_trip, phi);
    const auto step = mackey_eval(fm, down, mackey_eval(fm, up, phi));
    print_row(out == step ? "agrees" : "DIFFERS", phi, out);
  }

  // without (C2, C4) the transfer span is not a morphism
  std::cout << "\nminimal indexing system:\n";
  try {
    transfer_span(minimal_system(g), c2, all);
  } catch (const SpanError& err) {
    std::cout << "  " << err.what() << '\n';
  }

  // theta sends a span A -> C4/C4 to a C4-fixed object of the normed category on A
  std::cout << "\nnorm object of the transfer span over A = C4/C2:\n";
  const NormedCategory cat(s, up.source);
  const NormedObject x = theta_object(cat, up);
  std::cout << "  " << to_string(x) << (cat.is_fixed(x, all) ? "  (fixed by C4)" : "") << '\n';
  return 0;
}
