#include <iostream>

#include "cli.hpp"
#include "typestate/service_http.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  typestate::cli::Io io{std::cout, std::cerr, typestate::cli::color_from_env()};
  return typestate::cli::run(args, io, [](int port) {
    httplib::Server server;
    typestate::service::mount(server);
    std::cerr << "listening on 0.0.0.0:" << port << '\n';
    if (!server.listen("0.0.0.0", port)) {
      std::cerr << "cannot listen on port " << port << '\n';
      return 1;
    }
    return 0;
  });
}
