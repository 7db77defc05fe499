// DOM wiring for the step-through correction client. Rendering mirrors the
// API payload exactly: no client-side re-ranking or filtering.

import { ApiError, FlagView, SpellApi } from "./api.js";
import { contextWindow } from "./context.js";
import { DriverState, SessionDriver } from "./session.js";

type Elements = {
  banner: HTMLElement;
  setup: HTMLElement;
  document: HTMLTextAreaElement;
  file: HTMLInputElement;
  start: HTMLButtonElement;
  flagPanel: HTMLElement;
  position: HTMLElement;
  context: HTMLElement;
  suggestions: HTMLOListElement;
  skip: HTMLButtonElement;
  editInput: HTMLInputElement;
  edit: HTMLButtonElement;
  store: HTMLButtonElement;
  exit: HTMLButtonElement;
  donePanel: HTMLElement;
  doneStatus: HTMLElement;
  exportText: HTMLTextAreaElement;
  download: HTMLAnchorElement;
  restart: HTMLButtonElement;
  userdictNote: HTMLElement;
};

export class App {
  private driver: SessionDriver | null = null;
  private documentText = "";
  private busy = false;

  constructor(
    private api: SpellApi,
    private el: Elements,
  ) {}

  static fromDocument(api: SpellApi, root: Document): App {
    const get = <T extends HTMLElement>(id: string): T => {
      const node = root.getElementById(id);
      if (!node) throw new Error(`missing #${id}`);
      return node as T;
    };
    const app = new App(api, {
      banner: get("banner"),
      setup: get("setup"),
      document: get<HTMLTextAreaElement>("document"),
      file: get<HTMLInputElement>("file"),
      start: get<HTMLButtonElement>("start"),
      flagPanel: get("flag-panel"),
      position: get("position"),
      context: get("context"),
      suggestions: get<HTMLOListElement>("suggestions"),
      skip: get<HTMLButtonElement>("skip"),
      editInput: get<HTMLInputElement>("edit-input"),
      edit: get<HTMLButtonElement>("edit"),
      store: get<HTMLButtonElement>("store"),
      exit: get<HTMLButtonElement>("exit"),
      donePanel: get("done-panel"),
      doneStatus: get("done-status"),
      exportText: get<HTMLTextAreaElement>("export-text"),
      download: get<HTMLAnchorElement>("download"),
      restart: get<HTMLButtonElement>("restart"),
      userdictNote: get("userdict-note"),
    });
    app.wire(root);
    return app;
  }

  private wire(root: Document): void {
    this.el.start.addEventListener("click", () => void this.start());
    this.el.file.addEventListener("change", () => void this.readFile());
    this.el.skip.addEventListener("click", () => void this.act("skip"));
    this.el.store.addEventListener("click", () => void this.act("store"));
    this.el.exit.addEventListener("click", () => void this.finish(true));
    this.el.edit.addEventListener("click", () => void this.act("edit"));
    this.el.restart.addEventListener("click", () => this.reset());
    root.addEventListener("keydown", (ev) => this.shortcut(ev));
  }

  // Keyboard shortcuts mirror the classic checkers: s/e/t/x and 1..9.
  private shortcut(ev: KeyboardEvent): void {
    if (this.driver === null || this.busy) return;
    if (ev.target instanceof HTMLInputElement) return;
    if (ev.target instanceof HTMLTextAreaElement) return;
    if (ev.key === "s") void this.act("skip");
    else if (ev.key === "t") void this.act("store");
    else if (ev.key === "x") void this.finish(true);
    else if (ev.key === "e") this.el.editInput.focus();
    else if (/^[1-9]$/.test(ev.key)) void this.correct(Number(ev.key));
  }

  private async readFile(): Promise<void> {
    const file = this.el.file.files?.[0];
    if (file) {
      this.el.document.value = await file.text();
    }
  }

  async start(): Promise<void> {
    this.documentText = this.el.document.value;
    await this.guard(async () => {
      this.driver = await SessionDriver.open(this.api, this.documentText);
      window.location.hash = `s=${this.driver.id}`;
      this.render(await this.driver.next());
    });
  }

  /** Resume a session named in the URL hash after a refresh. */
  async resumeFromHash(): Promise<boolean> {
    const match = window.location.hash.match(/s=([A-Za-z0-9]+)/);
    if (!match) return false;
    this.driver = SessionDriver.resume(this.api, match[1]);
    this.documentText = this.el.document.value;
    try {
      this.render(await this.driver.next());
      return true;
    } catch {
      this.driver = null;
      return false;
    }
  }

  private async act(action: "skip" | "store" | "edit"): Promise<void> {
    if (!this.driver) return;
    const driver = this.driver;
    await this.guard(async () => {
      if (action === "edit") {
        const replacement = this.el.editInput.value.trim();
        if (!replacement) return;
        this.render(await driver.edit(replacement));
      } else if (action === "store") {
        const state = await driver.store();
        this.el.userdictNote.textContent = "stored in your dictionary";
        this.render(state);
      } else {
        this.render(await driver.skip());
      }
    });
  }

  private async correct(index: number): Promise<void> {
    if (!this.driver) return;
    const driver = this.driver;
    await this.guard(async () => {
      this.render(await driver.correct(index));
    });
  }

  private async finish(explicitExit: boolean): Promise<void> {
    if (!this.driver) return;
    const driver = this.driver;
    await this.guard(async () => {
      if (explicitExit) await driver.exit();
      const text = await driver.exportText();
      this.showDone("exported", text);
    });
  }

  private render(state: DriverState): void {
    if (state.phase === "done") {
      void this.guard(async () => {
        const text = await this.driver!.exportText();
        this.showDone(state.status, text);
      });
      return;
    }
    this.el.setup.hidden = true;
    this.el.donePanel.hidden = true;
    this.el.flagPanel.hidden = false;
    this.renderFlag(state.flag);
  }

  private renderFlag(flag: FlagView): void {
    const total = flag.total !== undefined ? ` of ${flag.total}` : "";
    this.el.position.textContent = `flag ${flag.ordinal}${total}`;
    const ctx = contextWindow(this.documentText, flag.span);
    this.el.context.replaceChildren();
    this.el.context.append(ctx.before);
    const mark = document.createElement("mark");
    mark.textContent = flag.word;
    this.el.context.append(mark, ctx.after);

    this.el.suggestions.replaceChildren();
    flag.suggestions.forEach((s, i) => {
      const li = document.createElement("li");
      const button = document.createElement("button");
      button.textContent = s.display;
      button.addEventListener("click", () => void this.correct(i + 1));
      const badge = document.createElement("span");
      badge.className = "badge";
      badge.textContent = s.class;
      li.append(button, badge);
      this.el.suggestions.append(li);
    });
    this.el.editInput.value = flag.word;
    this.el.userdictNote.textContent = "";
  }

  private showDone(status: string, text: string): void {
    this.el.flagPanel.hidden = true;
    this.el.donePanel.hidden = false;
    this.el.doneStatus.textContent = status;
    this.el.exportText.value = text;
    const blob = new Blob([text], { type: "text/plain;charset=utf-8" });
    this.el.download.href = URL.createObjectURL(blob);
    this.el.download.download = "corrected.txt";
    window.location.hash = "";
    this.driver = null;
  }

  private reset(): void {
    this.el.donePanel.hidden = true;
    this.el.flagPanel.hidden = true;
    this.el.setup.hidden = false;
  }

  /** Disable every control while a request is in flight. */
  private async guard(run: () => Promise<void>): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    this.setControlsDisabled(true);
    try {
      await run();
      this.el.banner.hidden = true;
    } catch (err) {
      this.el.banner.hidden = false;
      this.el.banner.textContent =
        err instanceof ApiError
          ? `${err.message}: ${err.detail}`
          : "service unreachable";
    } finally {
      this.busy = false;
      this.setControlsDisabled(false);
    }
  }

  private setControlsDisabled(disabled: boolean): void {
    for (const b of [
      this.el.start, this.el.skip, this.el.edit, this.el.store, this.el.exit,
    ]) {
      b.disabled = disabled;
    }
    this.el.suggestions
      .querySelectorAll("button")
      .forEach((b) => (b.disabled = disabled));
  }
}
