// Encode a watermark, render it as a graph, knock out one list pointer, repair
// it and decode again.

#include <iostream>

#include "sipwm/sipwm.hpp"

int main() {
  const auto w = sipwm::Watermark::from_decimal("12");
  const auto pi = sipwm::encode_w_to_sip(w);
  const auto graph = sipwm::encode_sip_to_rpg(pi);
  std::cout << "pi*   " << sipwm::write_permutation(pi);
  std::cout << sipwm::write_rpg(graph);

  auto damaged = graph.to_labeled();
  sipwm::EditLog log;
  sipwm::delete_edge(damaged, 3, log);
  std::cout << "after deleting " << log.front().a << "->" << log.front().b << ": "
            << sipwm::validate_rpg(damaged).describe() << '\n';

  const auto repaired = sipwm::repair_list_pointers(damaged);
  std::cout << "repaired decodes to " << sipwm::decode_sip_to_w(sipwm::decode_rpg_to_sip(repaired.graph)).to_decimal()
            << '\n';
}
