// Evaluate a positive word to its numbered pattern and write the picture.

#include <fstream>
#include <iostream>

#include "brin2v/pattern.hpp"
#include "brin2v/render.hpp"

int main(int argc, char** argv) {
  using namespace brin2v;
  const char* text = argc > 1 ? argv[1] : "v0 h1 h0 s1";
  NumberedPattern p = pattern_of_word(parse_word(text, Alphabet::pi));
  std::ofstream out("pattern.svg");
  out << render_pattern(p, 3);
  std::cout << "wrote pattern.svg for \"" << text << "\"\n";
  return 0;
}
