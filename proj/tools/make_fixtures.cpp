// Regenerates the committed CLI fixture corpus:
//   make_fixtures <fixtures-dir> <data-dir>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "canonica/generators.hpp"
#include "canonica/json_io.hpp"

using namespace canonica;

namespace {

void write(const std::filesystem::path& dir, const std::string& name, const Matrix& m) {
  std::ofstream f(dir / (name + ".json"), std::ios::binary);
  f << io::dump(io::matrix_to_json(m));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: make_fixtures <fixtures-dir> <data-dir>\n";
    return 3;
  }
  const std::filesystem::path fx = argv[1], data = argv[2];
  std::filesystem::create_directories(fx);
  std::filesystem::create_directories(data);
  gen::Rng rng(424242);
  const Complex i1(0.0, 1.0);

  write(fx, "cong_diag12", Matrix{{1.0, 0.0}, {0.0, 2.0}});
  write(fx, "cong_diag21", Matrix{{2.0, 0.0}, {0.0, 1.0}});
  {
    const Matrix u = gen::random_unitary(2, rng);
    write(fx, "cong_h2i", u * h2_block(1.0, i1) * transpose(u));
  }
  {
    const Matrix u = gen::random_unitary(4, rng);
    write(fx, "cong_h2i_singular",
          u * direct_sum(std::vector<Matrix>{h2_block(1.0, i1), Matrix{{0.0, 3.0}, {0.0, 0.0}}}) * transpose(u));
  }
  for (int k = 0; k < 8; ++k) {
    const std::size_t n = 3 + static_cast<std::size_t>(k);
    write(fx, "cong_random" + std::to_string(k), gen::random_congruence_normal(n, rng));
  }
  write(fx, "cong_coninvolutory", gen::random_coninvolutory(5, rng));
  write(fx, "cong_conjugate_normal", gen::random_conjugate_normal(6, rng));

  write(fx, "star_j2zero", Matrix{{0.0, 1.0}, {0.0, 0.0}});
  write(fx, "star_h2half", Matrix{{0.0, 1.0}, {0.5, 0.0}});
  write(fx, "star_diag", Matrix{{2.0, 0.0}, {0.0, -3.0 * i1}});
  for (int k = 0; k < 8; ++k) {
    const std::size_t n = 3 + static_cast<std::size_t>(k);
    write(fx, "star_random" + std::to_string(k), gen::random_squared_normal(n, rng));
  }
  write(fx, "star_involution", gen::random_involution(5, rng));
  {
    const Matrix u = gen::random_unitary(2, rng);
    write(fx, "star_tri_h2quarter", u * h2_block(1.0, -0.25) * adjoint(u));
  }
  for (int k = 0; k < 4; ++k)
    write(fx, "star_tri_random" + std::to_string(k), gen::random_squared_normal(4 + 2 * static_cast<std::size_t>(k), rng));

  write(fx, "unit_ro_random", gen::random_unitary(5, rng));
  write(fx, "unit_hu_random", gen::random_unitary(6, rng));

  write(data, "nonsquare", Matrix(2, 3));
  write(data, "generic", gen::gaussian(4, 4, rng));
  write(data, "h2_two", h2_block(1.0, 2.0));
  write(data, "identity3", Matrix::identity(3));
  {
    std::ofstream f(data / "bad_length.json", std::ios::binary);
    f << "{\"rows\": 2, \"cols\": 2, \"data\": [[1, 0], [0, 0], [1, 0]]}\n";
  }
  return 0;
}
