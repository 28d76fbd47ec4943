// Regenerates the example projects under data/.

#include <filesystem>
#include <iostream>

#include "corpus_gen.hpp"
#include "grkhs/project_io.hpp"

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);
  for (const auto& [name, project] : grkhs::corpus_files::builtin_corpus()) {
    grkhs::save_project(dir / name, project);
    std::cout << "wrote " << (dir / name).string() << "\n";
  }
  return 0;
}
