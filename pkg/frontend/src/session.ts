// Session driver: the UI's only state is the session id plus the flag the
// server last returned. Refreshing mid-session resumes at the server's
// cursor by calling next() again.

import { FlagView, SessionAction, SpellApi } from "./api.js";

export type DriverState =
  | { phase: "flag"; flag: FlagView }
  | { phase: "done"; status: string };

export class SessionDriver {
  private constructor(
    private api: SpellApi,
    public readonly id: string,
  ) {}

  static async open(api: SpellApi, text: string): Promise<SessionDriver> {
    const { id } = await api.openSession(text);
    return new SessionDriver(api, id);
  }

  static resume(api: SpellApi, id: string): SessionDriver {
    return new SessionDriver(api, id);
  }

  async next(): Promise<DriverState> {
    const res = await this.api.next(this.id);
    if (res.done) {
      return { phase: "done", status: res.status };
    }
    return { phase: "flag", flag: res.flag };
  }

  async apply(
    action: SessionAction,
    options: { replacement?: string; index?: number } = {},
  ): Promise<DriverState> {
    await this.api.action(this.id, action, options);
    return this.next();
  }

  skip(): Promise<DriverState> {
    return this.apply("skip");
  }

  edit(replacement: string): Promise<DriverState> {
    return this.apply("edit", { replacement });
  }

  store(): Promise<DriverState> {
    return this.apply("store");
  }

  correct(index: number): Promise<DriverState> {
    return this.apply("correct", { index });
  }

  async exit(): Promise<void> {
    await this.api.action(this.id, "exit");
  }

  exportText(): Promise<string> {
    return this.api.exportText(this.id).then((r) => r.text);
  }
}
