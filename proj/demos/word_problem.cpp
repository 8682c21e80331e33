// Decide whether two generator words give the same group element, and print
// their common canonical form.

#include <iostream>

#include "brin2v/two_v.hpp"

int main(int argc, char** argv) {
  using namespace brin2v;
  const char* w1 = argc > 1 ? argv[1] : "P0 A0";
  const char* w2 = argc > 2 ? argv[2] : "p0 P1";
  FractionPair f = eval_word(parse_word(w1, Alphabet::two_v));
  FractionPair g = eval_word(parse_word(w2, Alphabet::two_v));
  std::cout << w1 << "  ->  " << print_word(canonical_word_2v(f).as_word()) << "\n";
  std::cout << w2 << "  ->  " << print_word(canonical_word_2v(g).as_word()) << "\n";
  std::cout << (pairs_equal(f, g) ? "equal" : "different") << "\n";
  return 0;
}
