// Regenerates the automaton files in samples/ from the test corpus.
#include <fstream>
#include <iostream>

#include "../tests/corpus.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_samples <dir>\n";
    return 2;
  }
  std::string dir = argv[1];
  std::vector<corpus::Named> all = corpus::holonomy_corpus();
  for (auto& n : corpus::representation_corpus()) all.push_back(n);
  all.push_back({"abc", corpus::abc()});
  std::set<std::string> seen;
  for (auto const& [name, S] : all) {
    std::string file;
    for (char c : name) file += (c == ' ' || c == '-') ? '_' : static_cast<char>(std::tolower(c));
    if (!seen.insert(file).second) continue;
    std::vector<tsg::Transformation> gens;
    for (std::size_t g = 0; g < S.number_of_generators(); ++g) gens.push_back(S.generator(g));
    tsg::ProbabilisticInstance inst{tsg::DeterministicAutomaton::from_letters(gens), {}};
    for (std::size_t a = 0; a < gens.size(); ++a) inst.automaton.alphabet[a] = std::string(1, static_cast<char>('a' + a));
    std::ofstream(dir + "/" + file + ".json") << tsg::automaton_to_json(inst).dump(2) << "\n";
  }
}
