// make_tensor OUT 9x9 [seed]: writes a PCST tensor of pseudo-random doubles
#include "pcswave/io.hpp"

#include <iostream>
#include <random>
#include <sstream>

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: make_tensor OUT SHAPE [SEED]\n";
    return 2;
  }
  std::vector<std::size_t> shape;
  std::stringstream ss(argv[2]);
  for (std::string part; std::getline(ss, part, 'x');) shape.push_back(std::stoul(part));
  std::mt19937 rng(argc > 3 ? std::stoul(argv[3]) : 1);
  std::uniform_real_distribution<double> u(-1, 1);
  pcs::Tensor<double> t(shape);
  for (auto& v : t.data()) v = u(rng);
  pcs::save_pcst(argv[1], t);
  return 0;
}
