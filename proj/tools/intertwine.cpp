#include <exception>
#include <iostream>

#include <intertwine/cli.hpp>

int main(int argc, char** argv) {
  try {
    return intertwine::cli::run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return intertwine::cli::kFail;
  }
}
