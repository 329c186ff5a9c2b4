import { ApiError, askQuestion, getHealth } from "./api.js";
import { renderErrorBanner, renderHistory } from "./render.js";
import { SessionState } from "./state.js";

export function wireUp(doc: Document): void {
  const form = doc.querySelector<HTMLFormElement>("#ask-form");
  const input = doc.querySelector<HTMLInputElement>("#question");
  const submit = doc.querySelector<HTMLButtonElement>("#submit");
  const historyBox = doc.querySelector<HTMLElement>("#history");
  const errorBox = doc.querySelector<HTMLElement>("#error");
  const healthBox = doc.querySelector<HTMLElement>("#health");
  if (!form || !input || !submit || !historyBox || !errorBox || !healthBox) {
    return;
  }
  const state = new SessionState();

  const sync = () => {
    submit.disabled = state.inFlight || input.value.trim() === "";
  };
  input.addEventListener("input", sync);
  sync();

  getHealth()
    .then((health) => {
      healthBox.textContent = `${health.courses} courses loaded`;
    })
    .catch(() => {
      healthBox.textContent = "service unavailable";
    });

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const question = input.value.trim();
    if (!question || !state.begin()) {
      return;
    }
    errorBox.innerHTML = "";
    sync();
    askQuestion(question)
      .then((response) => {
        state.complete(question, response);
        historyBox.innerHTML = renderHistory(state.history);
        input.value = "";
      })
      .catch((error: unknown) => {
        state.fail();
        const message = error instanceof ApiError ? error.message : String(error);
        errorBox.innerHTML = renderErrorBanner(message);
      })
      .finally(() => {
        sync();
        input.focus();
      });
  });
}

if (typeof document !== "undefined") {
  wireUp(document);
}
