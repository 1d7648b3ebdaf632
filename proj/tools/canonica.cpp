#include <exception>
#include <iostream>

#include "canonica/cli.hpp"

int main(int argc, char** argv) {
  try {
    return canonica::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "canonica: " << e.what() << "\n";
    return canonica::cli::kNumerical;
  }
}
