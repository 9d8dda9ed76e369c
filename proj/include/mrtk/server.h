// Copyright 2026 The mrtk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// HTTP+JSON front end of a Session. The endpoints are listed in
// docs/api.md.

#ifndef MRTK_SERVER_H_
#define MRTK_SERVER_H_

#include <filesystem>
#include <memory>
#include <string>

#include "mrtk/session.h"

namespace mrtk {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path static_dir;  // served at "/" when set
};

class Server {
 public:
  // The session must outlive the server.
  Server(Session &session, ServerOptions options);
  ~Server();

  // Binds the socket and returns the bound port. Throws Error if the address
  // is in use.
  int Bind();
  // Serves requests until Stop(). Requires Bind().
  void Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mrtk

#endif  // MRTK_SERVER_H_
